#pragma once

// Free-group words over a finite generator alphabet: reduction,
// multiplication, inversion, evaluation under a generator-to-unitary
// assignment, and the text syntax used by the CLI and config strings.

#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "asymlab/normkit.hpp"

namespace asymlab {

struct Generator {
  int id = 0;
  friend bool operator==(Generator a, Generator b) { return a.id == b.id; }
};

struct Letter {
  int gen = 0;
  int sign = 1;  // +1 or -1
  friend bool operator==(Letter a, Letter b) { return a.gen == b.gen && a.sign == b.sign; }
};

// Freely reduced word; the empty word is the identity.
class Word {
 public:
  Word() = default;

  // Reduces an arbitrary letter sequence; idempotent on reduced input.
  static Word reduce(const std::vector<Letter>& letters) {
    Word w;
    for (const Letter& l : letters) {
      if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("Word: bad sign");
      if (!w.letters_.empty() && w.letters_.back().gen == l.gen &&
          w.letters_.back().sign == -l.sign) {
        w.letters_.pop_back();
      } else {
        w.letters_.push_back(l);
      }
    }
    return w;
  }

  static Word generator(int id, int sign = 1) { return reduce({Letter{id, sign}}); }

  static Word power(int id, long exponent) {
    Word w;
    int sign = exponent >= 0 ? 1 : -1;
    for (long i = 0; i < std::abs(exponent); ++i) w.letters_.push_back(Letter{id, sign});
    return w;
  }

  const std::vector<Letter>& letters() const { return letters_; }
  size_t length() const { return letters_.size(); }
  bool is_empty() const { return letters_.empty(); }

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  friend bool operator<(const Word& a, const Word& b) {
    if (a.letters_.size() != b.letters_.size())
      return a.letters_.size() < b.letters_.size();
    for (size_t i = 0; i < a.letters_.size(); ++i) {
      if (a.letters_[i].gen != b.letters_[i].gen)
        return a.letters_[i].gen < b.letters_[i].gen;
      if (a.letters_[i].sign != b.letters_[i].sign)
        return a.letters_[i].sign > b.letters_[i].sign;  // positive letters first
    }
    return false;
  }

 private:
  std::vector<Letter> letters_;
};

inline Word multiply(const Word& w1, const Word& w2) {
  std::vector<Letter> cat = w1.letters();
  cat.insert(cat.end(), w2.letters().begin(), w2.letters().end());
  return Word::reduce(cat);
}

inline Word invert(const Word& w) {
  std::vector<Letter> rev;
  rev.reserve(w.length());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    rev.push_back(Letter{it->gen, -it->sign});
  return Word::reduce(rev);
}

// Product of assigned unitaries and their adjoints in word order; the empty
// word maps to the identity. The assignment is indexed by generator id.
inline UnitaryMatrix evaluate(const Word& w, const std::vector<UnitaryMatrix>& assignment) {
  if (assignment.empty()) throw std::invalid_argument("evaluate: empty assignment");
  const int k = assignment.front().dim();
  for (const auto& u : assignment)
    if (u.dim() != k) throw std::invalid_argument("evaluate: assignment dimension mismatch");
  if (w.is_empty()) return UnitaryMatrix::identity(k);
  ComplexMatrix acc;
  bool first = true;
  for (const Letter& l : w.letters()) {
    if (l.gen < 0 || l.gen >= static_cast<int>(assignment.size()))
      throw std::invalid_argument("evaluate: generator missing from assignment");
    const ComplexMatrix& m = assignment[l.gen].matrix();
    ComplexMatrix factor = l.sign == 1 ? m : adjoint(m);
    acc = first ? std::move(factor) : multiply(acc, factor);
    first = false;
  }
  return UnitaryMatrix(std::move(acc));
}

struct ConjugationFactor {
  Word conjugator;  // x
  Word relator;     // r
  int sign = 1;     // r or r^-1
};

// Reduced product x_1 r_1^(s_1) x_1^-1 ... x_k r_k^(s_k) x_k^-1. The witness
// length k is the multiplicativity constant attached to the resulting word.
inline Word conjugation_product(const std::vector<ConjugationFactor>& witness) {
  Word acc;
  for (const ConjugationFactor& f : witness) {
    if (f.sign != 1 && f.sign != -1)
      throw std::invalid_argument("conjugation_product: bad sign");
    Word mid = f.sign == 1 ? f.relator : invert(f.relator);
    acc = multiply(acc, multiply(f.conjugator, multiply(mid, invert(f.conjugator))));
  }
  return acc;
}

// --- text syntax -----------------------------------------------------------
// Generators are lowercase ASCII names, inverses use a trailing ' or ^-1,
// juxtaposition (whitespace) is the product: "b' a a b a' a' a'".

inline Word parse_word(const std::string& text, const std::vector<std::string>& names) {
  std::vector<Letter> letters;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int sign = 1;
    if (tok.size() >= 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
      sign = -1;
      tok.resize(tok.size() - 3);
    } else if (tok.size() >= 2 && tok.back() == '\'') {
      sign = -1;
      tok.pop_back();
    }
    int id = -1;
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == tok) { id = static_cast<int>(i); break; }
    if (id < 0) throw std::invalid_argument("parse_word: unknown generator '" + tok + "'");
    letters.push_back(Letter{id, sign});
  }
  return Word::reduce(letters);
}

inline std::string print_word(const Word& w, const std::vector<std::string>& names) {
  std::string out;
  for (const Letter& l : w.letters()) {
    if (l.gen < 0 || l.gen >= static_cast<int>(names.size()))
      throw std::invalid_argument("print_word: generator id out of range");
    if (!out.empty()) out += ' ';
    out += names[l.gen];
    if (l.sign == -1) out += '\'';
  }
  return out;
}

}  // namespace asymlab
