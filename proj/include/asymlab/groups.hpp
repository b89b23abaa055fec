#pragma once

// Presentations, normal-form group backends (the section from group elements
// back into the free group), and finite windows on which cochains live.

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "asymlab/words.hpp"

namespace asymlab {

struct Presentation {
  std::vector<std::string> generator_names;
  std::vector<Word> relators;

  int generator_count() const { return static_cast<int>(generator_names.size()); }

  void validate() const {
    for (const Word& r : relators)
      if (r.is_empty()) throw std::invalid_argument("Presentation: empty relator");
  }

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.generator_names == b.generator_names && a.relators == b.relators;
  }
};

// Group with solvable word problem. Elements are carried around as their
// canonical normal-form words, so the normal form doubles as the section
// into the free group: sigma(1) is the empty word and sigma(g^-1) is the
// inverse word of sigma(g) for every g with g^2 != 1.
class NormalFormGroup {
 public:
  virtual ~NormalFormGroup() = default;

  const Presentation& presentation() const { return pres_; }
  const std::string& name() const { return name_; }

  // Canonical normal form of an arbitrary word in the generators.
  virtual Word normal_form(const Word& w) const = 0;

  Word identity() const { return Word(); }
  Word multiply_elements(const Word& a, const Word& b) const {
    return normal_form(multiply(a, b));
  }
  Word invert_element(const Word& a) const { return normal_form(invert(a)); }
  bool is_identity(const Word& a) const { return normal_form(a).is_empty(); }

 protected:
  NormalFormGroup(std::string name, Presentation pres)
      : name_(std::move(name)), pres_(std::move(pres)) {
    pres_.validate();
  }

  std::string name_;
  Presentation pres_;
};

namespace detail {

inline std::vector<std::string> default_names(int d) {
  static const char* base = "abcdefghijklmnopqrstuvwxyz";
  std::vector<std::string> names;
  for (int i = 0; i < d; ++i) {
    if (i < 26) names.emplace_back(1, base[i]);
    else names.push_back("g" + std::to_string(i));
  }
  return names;
}

class FreeAbelianGroup final : public NormalFormGroup {
 public:
  explicit FreeAbelianGroup(int d)
      : NormalFormGroup("z^" + std::to_string(d), make_presentation(d)), d_(d) {}

  Word normal_form(const Word& w) const override {
    std::vector<long> expo(d_, 0);
    for (const Letter& l : w.letters()) {
      if (l.gen < 0 || l.gen >= d_)
        throw std::invalid_argument("FreeAbelianGroup: letter out of alphabet");
      expo[l.gen] += l.sign;
    }
    Word out;
    for (int i = 0; i < d_; ++i) out = multiply(out, Word::power(i, expo[i]));
    return out;
  }

 private:
  static Presentation make_presentation(int d) {
    if (d < 1) throw std::invalid_argument("free_abelian: d must be >= 1");
    Presentation p;
    p.generator_names = default_names(d);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        // commutator a_i a_j a_i^-1 a_j^-1
        Word r = multiply(multiply(Word::generator(i), Word::generator(j)),
                          multiply(Word::generator(i, -1), Word::generator(j, -1)));
        p.relators.push_back(r);
      }
    if (d == 1) p.relators.clear();
    return p;
  }

  int d_;
};

class CyclicGroup final : public NormalFormGroup {
 public:
  explicit CyclicGroup(int m)
      : NormalFormGroup("cyclic:" + std::to_string(m), make_presentation(m)), m_(m) {}

  Word normal_form(const Word& w) const override {
    long e = 0;
    for (const Letter& l : w.letters()) {
      if (l.gen != 0) throw std::invalid_argument("CyclicGroup: letter out of alphabet");
      e += l.sign;
    }
    // representative in the symmetric range (-m/2, m/2]
    e %= m_;
    if (2 * e > m_) e -= m_;
    if (2 * e <= -m_) e += m_;
    return Word::power(0, e);
  }

 private:
  static Presentation make_presentation(int m) {
    if (m < 1) throw std::invalid_argument("cyclic: m must be >= 1");
    Presentation p;
    p.generator_names = {"a"};
    p.relators = {Word::power(0, m)};
    return p;
  }

  int m_;
};

}  // namespace detail

inline std::shared_ptr<const NormalFormGroup> free_abelian(int d) {
  return std::make_shared<detail::FreeAbelianGroup>(d);
}

inline std::shared_ptr<const NormalFormGroup> cyclic(int m) {
  return std::make_shared<detail::CyclicGroup>(m);
}

// Baumslag-Solitar presentation <a, b | b^-1 a^m b a^-n>. No normal-form
// backend: the experiments on this family only evaluate fixed words.
inline Presentation bs_presentation(int m, int n) {
  if (m == 0 || n == 0) throw std::invalid_argument("bs_presentation: m, n must be nonzero");
  Presentation p;
  p.generator_names = {"a", "b"};
  Word r = multiply(Word::generator(1, -1), Word::power(0, m));
  r = multiply(r, Word::generator(1));
  r = multiply(r, Word::power(0, -static_cast<long>(n)));
  p.relators = {r};
  return p;
}

// Built-in groups with a normal-form backend: "z^d", "cyclic:m".
inline std::shared_ptr<const NormalFormGroup> group_by_name(const std::string& name) {
  if (name.rfind("z^", 0) == 0) return free_abelian(std::stoi(name.substr(2)));
  if (name.rfind("cyclic:", 0) == 0) return cyclic(std::stoi(name.substr(7)));
  throw std::invalid_argument("group_by_name: no normal-form backend for '" + name + "'");
}

// Presentations addressable by name, including "bs:m:n" which carries no
// normal-form backend.
inline Presentation presentation_by_name(const std::string& name) {
  if (name.rfind("bs:", 0) == 0) {
    size_t cut = name.find(':', 3);
    if (cut == std::string::npos)
      throw std::invalid_argument("presentation_by_name: expected bs:m:n");
    return bs_presentation(std::stoi(name.substr(3, cut - 3)),
                           std::stoi(name.substr(cut + 1)));
  }
  return group_by_name(name)->presentation();
}

// Finite, inversion-closed, identity-containing list of group elements with
// a dense multiplication table into itself (-1 marks products that leave the
// window). This is the finite carrier for cochains.
class Window {
 public:
  Window(std::shared_ptr<const NormalFormGroup> group, std::vector<Word> elements)
      : group_(std::move(group)), elements_(std::move(elements)) {
    const int n = size();
    for (int i = 0; i < n; ++i) index_[elements_[i]] = i;
    if (index_.size() != elements_.size())
      throw std::invalid_argument("Window: duplicate elements");
    if (index_.find(Word()) == index_.end() || index_[Word()] != 0)
      throw std::invalid_argument("Window: identity must be element 0");
    inverse_.resize(n);
    involution_.resize(n);
    for (int i = 0; i < n; ++i) {
      Word inv = group_->invert_element(elements_[i]);
      auto it = index_.find(inv);
      if (it == index_.end()) throw std::invalid_argument("Window: not inversion-closed");
      inverse_[i] = it->second;
      involution_[i] = i != 0 && inverse_[i] == i;
    }
    product_.assign(static_cast<size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Word p = group_->multiply_elements(elements_[i], elements_[j]);
        auto it = index_.find(p);
        if (it != index_.end()) product_[static_cast<size_t>(i) * n + j] = it->second;
      }
  }

  const NormalFormGroup& group() const { return *group_; }
  std::shared_ptr<const NormalFormGroup> group_ptr() const { return group_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<Word>& elements() const { return elements_; }
  const Word& element(int i) const { return elements_[i]; }

  // Index of the product inside the window, or -1 if it falls outside.
  int product(int i, int j) const { return product_[static_cast<size_t>(i) * size() + j]; }
  int inverse(int i) const { return inverse_[i]; }
  bool is_involution(int i) const { return involution_[i]; }

  int index_of(const Word& w) const {
    auto it = index_.find(w);
    return it == index_.end() ? -1 : it->second;
  }

 private:
  std::shared_ptr<const NormalFormGroup> group_;
  std::vector<Word> elements_;
  std::map<Word, int> index_;
  std::vector<int> inverse_;
  std::vector<bool> involution_;
  std::vector<int> product_;
};

// All elements expressible as products of at most `radius` generators or
// inverses, ordered by word length then lexicographically.
inline Window ball(std::shared_ptr<const NormalFormGroup> group, int radius) {
  if (radius < 0) throw std::invalid_argument("ball: radius must be >= 0");
  const int d = group->presentation().generator_count();
  std::map<Word, int> seen;  // element -> distance
  std::vector<Word> frontier = {Word()};
  seen[Word()] = 0;
  for (int r = 1; r <= radius; ++r) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (int g = 0; g < d; ++g)
        for (int sign : {1, -1}) {
          Word p = group->multiply_elements(w, Word::generator(g, sign));
          if (seen.emplace(p, r).second) next.push_back(p);
        }
    frontier = std::move(next);
  }
  std::vector<Word> elements;
  elements.reserve(seen.size());
  for (const auto& [w, dist] : seen) elements.push_back(w);
  std::sort(elements.begin(), elements.end());
  return Window(std::move(group), std::move(elements));
}

}  // namespace asymlab
