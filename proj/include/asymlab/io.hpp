#pragma once

// Serialization: matrices as flat (re, im) JSON arrays with a dimension
// header, representations as presentation name + dimension + per-generator
// blobs, correction reports as flat JSON objects, and an RFC 4180 CSV writer
// that prints floats with 17 significant digits.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymlab/almostrep.hpp"
#include "asymlab/cohomology.hpp"
#include "asymlab/cplx_matrix.hpp"
#include "asymlab/groups.hpp"

namespace asymlab {

using json = nlohmann::ordered_json;

inline json matrix_to_json(const ComplexMatrix& m) {
  json j;
  j["dim"] = m.dim();
  json data = json::array();
  for (int i = 0; i < m.dim(); ++i)
    for (int jj = 0; jj < m.dim(); ++jj)
      data.push_back({m(i, jj).real(), m(i, jj).imag()});
  j["data"] = std::move(data);
  return j;
}

inline ComplexMatrix matrix_from_json(const json& j) {
  int dim = j.at("dim").get<int>();
  const json& data = j.at("data");
  if (static_cast<int>(data.size()) != dim * dim)
    throw std::invalid_argument("matrix_from_json: size mismatch");
  ComplexMatrix m(dim);
  for (int idx = 0; idx < dim * dim; ++idx)
    m.data()[idx] = cplx(data[idx][0].get<double>(), data[idx][1].get<double>());
  return m;
}

inline json rep_to_json(const AlmostRep& rep, const std::string& group_name) {
  json j;
  j["presentation"] = group_name;
  j["dimension"] = rep.dim;
  json images = json::object();
  for (int g = 0; g < rep.presentation.generator_count(); ++g)
    images[rep.presentation.generator_names[g]] = matrix_to_json(rep.images[g].matrix());
  j["images"] = std::move(images);
  return j;
}

inline AlmostRep rep_from_json(const json& j) {
  Presentation pres = presentation_by_name(j.at("presentation").get<std::string>());
  AlmostRep rep;
  rep.presentation = pres;
  rep.dim = j.at("dimension").get<int>();
  for (const std::string& name : pres.generator_names)
    rep.images.emplace_back(matrix_from_json(j.at("images").at(name)));
  rep.validate();
  return rep;
}

inline json report_to_json(const CorrectionReport& r) {
  json j;
  j["defect_before"] = r.defect_before;
  j["defect_after"] = r.defect_after;
  j["residual"] = r.residual;
  j["beta_norm"] = r.beta_norm;
  j["iterations"] = r.iterations;
  j["stalled"] = r.stalled;
  return j;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// CSV with CRLF line endings; fields in this project never need quoting.
class CsvWriter {
 public:
  void row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) text_ += ',';
      text_ += fields[i];
    }
    text_ += "\r\n";
  }

  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

}  // namespace asymlab
