#include "witness_forge/io.hpp"

#include <fstream>

namespace witness_forge::io {

json factors_to_json(const PartySystem& system) {
  json out = json::array();
  for (const auto& f : system.factors())
    out.push_back({{"party", std::string(1, party_char(f.label.party))}, {"index", f.label.index}, {"dim", f.dim}});
  return out;
}

PartySystem factors_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "\"factors\" must be an array");
  std::vector<Factor> factors;
  try {
    for (const auto& f : j) {
      const auto party = f.at("party").get<std::string>();
      if (party.size() != 1) throw Error(ErrorCode::Parse, "party must be a single letter");
      factors.push_back({{party_from_char(party[0]), f.at("index").get<int>()}, f.at("dim").get<int>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  return PartySystem(std::move(factors));
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) throw Error(ErrorCode::Parse, "matrix is empty");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  try {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& row = j[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
        throw Error(ErrorCode::NotSquare, "ragged matrix row " + std::to_string(r));
      for (Eigen::Index c = 0; c < cols; ++c) {
        const auto& e = row[static_cast<std::size_t>(c)];
        if (e.is_number()) {
          m(r, c) = cplx(e.get<double>(), 0.0);
        } else {
          if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::Parse, "entries must be [re, im] pairs");
          m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "vector must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  try {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto& e = j[i];
      v(static_cast<Eigen::Index>(i)) = e.is_number() ? cplx(e.get<double>(), 0.0)
                                                      : cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  return v;
}

json operator_to_json(const LabeledOperator& op) {
  return {{"factors", factors_to_json(op.system())}, {"matrix", matrix_to_json(op.matrix())}};
}

LabeledOperator operator_from_json(const json& j) {
  if (!j.is_object() || !j.contains("factors") || !j.contains("matrix"))
    throw Error(ErrorCode::Parse, "operator document needs \"factors\" and \"matrix\"");
  auto system = factors_from_json(j.at("factors"));
  auto matrix = matrix_from_json(j.at("matrix"));
  return {std::move(system), std::move(matrix)};
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

LabeledOperator read_operator(const std::filesystem::path& path) { return operator_from_json(read_json(path)); }

void write_operator(const std::filesystem::path& path, const LabeledOperator& op) {
  write_json(path, operator_to_json(op));
}

}  // namespace witness_forge::io
