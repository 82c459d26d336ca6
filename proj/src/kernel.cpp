#include "mbie/kernel.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mbie {

namespace {
bool on_positive_axis(cd c) { return c.imag() == 0.0 && c.real() > 0.0; }
} // namespace

void MeromorphicKernel::validate() const {
  for (const auto& term : terms) {
    if (term.c == cd(0.0, 0.0)) throw ValidationError("MeromorphicKernel: pole at 0 is not allowed");
    if (term.m < 1) throw ValidationError("MeromorphicKernel: multiplicity must be >= 1");
  }
}

bool MeromorphicKernel::admissible() const {
  validate();
  for (const auto& term : terms)
    if (on_positive_axis(term.c) && term.m != 1) return false;
  return true;
}

cd MeromorphicKernel::eval(double t) const {
  cd sum(0.0, 0.0);
  for (const auto& term : terms) {
    cd den = cd(t, 0.0) - term.c;
    cd p = den;
    for (int j = 1; j < term.m; ++j) p *= den;
    sum += term.d / p;
  }
  return sum;
}

bool check_admissible(const MeromorphicKernel& kernel) { return kernel.admissible(); }

void MellinLine::validate() const {
  if (!(beta > 0.0 && beta < 1.0)) throw ValidationError("MellinLine: beta must lie in (0, 1)");
}

std::string to_json(const MellinOperator& op) {
  nlohmann::json j;
  j["c0"] = {op.c0.real(), op.c0.imag()};
  j["c1"] = {op.c1.real(), op.c1.imag()};
  j["terms"] = nlohmann::json::array();
  for (const auto& term : op.kernel.terms) {
    j["terms"].push_back({{"d_re", term.d.real()},
                          {"d_im", term.d.imag()},
                          {"c_re", term.c.real()},
                          {"c_im", term.c.imag()},
                          {"m", term.m}});
  }
  return j.dump(2);
}

MellinOperator mellin_operator_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad kernel JSON: ") + e.what());
  }
  MellinOperator op;
  auto read_c = [&](const char* key) -> cd {
    if (!j.contains(key)) return cd(0.0, 0.0);
    const auto& v = j.at(key);
    if (v.is_number()) return cd(v.get<double>(), 0.0);
    return cd(v.at(0).get<double>(), v.at(1).get<double>());
  };
  op.c0 = read_c("c0");
  op.c1 = read_c("c1");
  if (j.contains("terms")) {
    for (const auto& t : j.at("terms")) {
      KernelTerm term;
      term.d = cd(t.at("d_re").get<double>(), t.value("d_im", 0.0));
      term.c = cd(t.at("c_re").get<double>(), t.value("c_im", 0.0));
      term.m = t.value("m", 1);
      op.kernel.terms.push_back(term);
    }
  }
  op.kernel.validate();
  return op;
}

void write_json(const MellinOperator& op, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out << to_json(op) << "\n";
}

MellinOperator read_mellin_operator_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return mellin_operator_from_json(ss.str());
}

} // namespace mbie
