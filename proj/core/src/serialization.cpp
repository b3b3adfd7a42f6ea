#include "lyapcert/serialization.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lyapcert {

namespace {

using nlohmann::json;

json polynomial_to_json_obj(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back({{"exps", m.exps}, {"coef", to_string(c)}});
  }
  return json{{"nvars", p.nvars()}, {"terms", terms}};
}

Polynomial polynomial_from_json_obj(const json& j) {
  if (!j.contains("nvars") || !j.contains("terms"))
    throw std::invalid_argument("polynomial JSON needs 'nvars' and 'terms'");
  Polynomial p(j.at("nvars").get<int>());
  for (const auto& t : j.at("terms")) {
    std::vector<int> exps = t.at("exps").get<std::vector<int>>();
    Rational c;
    const auto& coef = t.at("coef");
    if (coef.is_string())
      c = rational_from_string(coef.get<std::string>());
    else if (coef.is_number_integer())
      c = Rational(coef.get<long long>());
    else
      throw std::invalid_argument(
          "polynomial coefficients must be exact strings or integers");
    p.add_term(Monomial{std::move(exps)}, c);
  }
  return p;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

std::string polynomial_to_json(const Polynomial& p) {
  return polynomial_to_json_obj(p).dump(2) + "\n";
}

Polynomial polynomial_from_json(const std::string& text) {
  return polynomial_from_json_obj(json::parse(text));
}

std::string vector_field_to_json(const VectorField& f) {
  json comps = json::array();
  for (const auto& c : f.components) comps.push_back(polynomial_to_json_obj(c));
  json j{{"nvars", f.nvars},
         {"degree", f.degree},
         {"homogeneous", f.is_homogeneous},
         {"components", comps}};
  return j.dump(2) + "\n";
}

VectorField vector_field_from_json(const std::string& text) {
  json j = json::parse(text);
  std::vector<Polynomial> comps;
  for (const auto& c : j.at("components")) comps.push_back(polynomial_from_json_obj(c));
  return make_vector_field(std::move(comps));
}

std::string certificate_to_json(const GramCertificate& cert, double feas_tol, double recon_tol) {
  json basis = json::array();
  for (const auto& m : cert.basis) basis.push_back(m.exps);
  json gram = json::array();
  for (int i = 0; i < cert.gram.rows(); ++i)
    for (int j = 0; j < cert.gram.cols(); ++j) gram.push_back(cert.gram(i, j));
  json j{{"dim", cert.basis.size()},
         {"basis", basis},
         {"gram", gram},  // row-major
         {"min_eig", cert.min_eig},
         {"feas_tol", feas_tol},
         {"recon_tol", recon_tol}};
  return j.dump(2) + "\n";
}

GramCertificate certificate_from_json(const std::string& text) {
  json j = json::parse(text);
  GramCertificate cert;
  for (const auto& b : j.at("basis")) cert.basis.push_back(Monomial{b.get<std::vector<int>>()});
  const int n = static_cast<int>(cert.basis.size());
  const auto& gram = j.at("gram");
  if (static_cast<int>(gram.size()) != n * n)
    throw std::invalid_argument("gram array size does not match the basis");
  cert.gram.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) cert.gram(i, k) = gram.at(i * n + k).get<double>();
  cert.min_eig = j.at("min_eig").get<double>();
  return cert;
}

std::string trajectory_to_csv(const Trajectory& traj,
                              const std::function<double(const EvalPoint&)>* tracked,
                              const std::string& tracked_name) {
  std::ostringstream out;
  out << "t";
  if (!traj.states.empty())
    for (size_t i = 0; i < traj.states[0].coords.size(); ++i) out << ",x" << (i + 1);
  if (tracked) out << "," << tracked_name;
  out << "\n";
  for (size_t k = 0; k < traj.states.size(); ++k) {
    out << format_double(traj.times[k]);
    for (double c : traj.states[k].coords) out << "," << format_double(c);
    if (tracked) out << "," << format_double((*tracked)(traj.states[k]));
    out << "\n";
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace lyapcert
