#include "sft/coeff_io.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <string>

namespace sft {
namespace {

constexpr const char* kMagic = "sft-coefficients v1";

std::string full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

void write_coefficient_sets(std::ostream& os, const std::vector<CoefficientSet>& sets) {
  os << kMagic << '\n';
  for (const CoefficientSet& set : sets) {
    os << "set kind=" << coeff_kind_name(set.kind) << " K=" << set.grid.half_width
       << " beta=" << full(set.grid.beta) << " sigma=" << full(set.sigma)
       << " xi=" << full(set.xi) << " n0=" << set.n0
       << " fit_rmse=" << full(set.fit_rmse_percent) << '\n';
    Eigen::Index i = 0;
    for (int p : set.grid.cos_orders) {
      os << "coeff cos " << p << ' ' << full(set.cos_coeffs[i].real()) << ' '
         << full(set.cos_coeffs[i].imag()) << '\n';
      ++i;
    }
    i = 0;
    for (int p : set.grid.sin_orders) {
      os << "coeff sin " << p << ' ' << full(set.sin_coeffs[i].real()) << ' '
         << full(set.sin_coeffs[i].imag()) << '\n';
      ++i;
    }
    os << "end\n";
  }
}

std::vector<CoefficientSet> read_coefficient_sets(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kMagic)
    throw std::invalid_argument("coefficient file: bad or missing version header");

  std::vector<CoefficientSet> sets;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream head(line);
    std::string token;
    head >> token;
    if (token != "set")
      throw std::invalid_argument("coefficient file: expected 'set', got: " + line);

    std::map<std::string, std::string> fields;
    while (head >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("coefficient file: malformed field: " + token);
      fields[token.substr(0, eq)] = token.substr(eq + 1);
    }
    const CoeffKind kind = coeff_kind_from_name(fields.at("kind"));
    const int half_width = std::stoi(fields.at("K"));
    const double beta = std::stod(fields.at("beta"));

    std::vector<int> cos_orders, sin_orders;
    std::vector<std::complex<double>> cos_vals, sin_vals;
    while (std::getline(is, line) && line != "end") {
      std::istringstream row(line);
      std::string tag, basis;
      int p = 0;
      double re = 0.0, im = 0.0;
      row >> tag >> basis >> p >> re >> im;
      if (tag != "coeff" || row.fail())
        throw std::invalid_argument("coefficient file: malformed coefficient line: " + line);
      if (basis == "cos") {
        cos_orders.push_back(p);
        cos_vals.emplace_back(re, im);
      } else if (basis == "sin") {
        sin_orders.push_back(p);
        sin_vals.emplace_back(re, im);
      } else {
        throw std::invalid_argument("coefficient file: unknown basis: " + basis);
      }
    }

    CoefficientSet set{kind, HarmonicGrid(half_width, beta, cos_orders, sin_orders),
                       {}, {}, std::stod(fields.at("fit_rmse")),
                       std::stod(fields.at("sigma")), std::stod(fields.at("xi")),
                       std::stoi(fields.at("n0"))};
    set.cos_coeffs = Eigen::Map<const Eigen::VectorXcd>(cos_vals.data(),
                                                        static_cast<Eigen::Index>(cos_vals.size()));
    set.sin_coeffs = Eigen::Map<const Eigen::VectorXcd>(sin_vals.data(),
                                                        static_cast<Eigen::Index>(sin_vals.size()));
    sets.push_back(std::move(set));
  }
  return sets;
}

}  // namespace sft
