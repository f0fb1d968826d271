#include "mbas/market.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace mbas {

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_matrix_market(const std::string& path, const SpMat& A, bool symmetric) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");

  std::vector<std::string> lines;
  lines.reserve(static_cast<std::size_t>(A.nonZeros()));
  for (Index i = 0; i < A.outerSize(); ++i) {
    for (SpMat::InnerIterator it(A, i); it; ++it) {
      if (symmetric && it.col() > it.row()) continue;
      std::ostringstream ss;
      ss << it.row() + 1 << ' ' << it.col() + 1 << ' ' << format_value(it.value());
      lines.push_back(ss.str());
    }
  }

  out << "%%MatrixMarket matrix coordinate real "
      << (symmetric ? "symmetric" : "general") << '\n';
  out << A.rows() << ' ' << A.cols() << ' ' << lines.size() << '\n';
  for (const auto& l : lines) out << l << '\n';
  if (!out) throw Error("write failed for '" + path + "'");
}

SpMat read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");

  std::string header;
  std::getline(in, header);
  if (header.rfind("%%MatrixMarket", 0) != 0)
    throw Error("'" + path + "' is not a Matrix-Market file");
  if (header.find("coordinate") == std::string::npos ||
      header.find("real") == std::string::npos)
    throw Error("unsupported Matrix-Market variant in '" + path + "'");
  const bool symmetric = header.find("symmetric") != std::string::npos;

  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream dims(line);
  Index rows = 0, cols = 0;
  std::size_t nnz = 0;
  if (!(dims >> rows >> cols >> nnz)) throw Error("bad size line in '" + path + "'");

  std::vector<Triplet> trips;
  trips.reserve(symmetric ? 2 * nnz : nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    Index i = 0, j = 0;
    double v = 0;
    if (!(in >> i >> j >> v)) throw Error("truncated entries in '" + path + "'");
    trips.emplace_back(i - 1, j - 1, v);
    if (symmetric && i != j) trips.emplace_back(j - 1, i - 1, v);
  }

  SpMat A(rows, cols);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  return A;
}

void write_vector(const std::string& path, const Vec& v) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  for (Index i = 0; i < v.size(); ++i) out << format_value(v[i]) << '\n';
  if (!out) throw Error("write failed for '" + path + "'");
}

Vec read_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::vector<double> vals;
  double v;
  while (in >> v) vals.push_back(v);
  Vec x(static_cast<Index>(vals.size()));
  for (Index i = 0; i < x.size(); ++i) x[i] = vals[static_cast<std::size_t>(i)];
  return x;
}

}  // namespace mbas
