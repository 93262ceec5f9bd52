#include "ddnf/variables.hpp"

#include <numeric>
#include <stdexcept>

namespace ddnf {

VariableSpace VariableSpace::center(int p, bool includes_zero, int s) {
  if (p < 0 || s < 0) throw std::invalid_argument("VariableSpace: negative dimension");
  VariableSpace sp;
  sp.p_ = p;
  sp.includes_zero_ = includes_zero;
  sp.s_ = s;
  if (includes_zero) sp.vars_.push_back({VarKind::Zero, 0});
  for (int j = 1; j <= p; ++j) {
    sp.vars_.push_back({VarKind::HopfPlus, j});
    sp.vars_.push_back({VarKind::HopfMinus, j});
  }
  for (int k = 1; k <= s; ++k) sp.vars_.push_back({VarKind::Param, k});
  return sp;
}

VariableSpace VariableSpace::centerDelayed(int p, bool includes_zero, int num_delayed, int s) {
  if (num_delayed < 0) throw std::invalid_argument("VariableSpace: negative delay count");
  VariableSpace sp = center(p, includes_zero, 0);
  sp.num_delayed_ = num_delayed;
  for (int i = 1; i <= num_delayed; ++i) sp.vars_.push_back({VarKind::Delayed, i});
  sp.s_ = s;
  for (int k = 1; k <= s; ++k) sp.vars_.push_back({VarKind::Param, k});
  return sp;
}

VariableSpace VariableSpace::delayed(int num_delayed, int s) {
  if (num_delayed <= 0) throw std::invalid_argument("VariableSpace: need at least one delayed variable");
  VariableSpace sp;
  sp.num_delayed_ = num_delayed;
  sp.s_ = s;
  for (int i = 1; i <= num_delayed; ++i) sp.vars_.push_back({VarKind::Delayed, i});
  for (int k = 1; k <= s; ++k) sp.vars_.push_back({VarKind::Param, k});
  return sp;
}

VariableSpace VariableSpace::radial(int p, bool includes_zero, int s) {
  if (p < 0 || s < 0) throw std::invalid_argument("VariableSpace: negative dimension");
  VariableSpace sp;
  sp.p_ = p;
  sp.includes_zero_ = includes_zero;
  sp.s_ = s;
  if (includes_zero) sp.vars_.push_back({VarKind::RadialZero, 0});
  for (int j = 1; j <= p; ++j) sp.vars_.push_back({VarKind::Radial, j});
  for (int k = 1; k <= s; ++k) sp.vars_.push_back({VarKind::Param, k});
  return sp;
}

int VariableSpace::centerCount() const {
  int n = 0;
  for (const Variable& v : vars_) {
    if (v.kind == VarKind::Zero || v.kind == VarKind::HopfPlus || v.kind == VarKind::HopfMinus) ++n;
  }
  return n;
}

int VariableSpace::paramOffset() const {
  for (int i = 0; i < size(); ++i) {
    if (vars_[static_cast<std::size_t>(i)].kind == VarKind::Param) return i;
  }
  return size();
}

std::vector<int> VariableSpace::weightOf(int i) const {
  std::vector<int> w(static_cast<std::size_t>(p_), 0);
  const Variable& v = vars_[static_cast<std::size_t>(i)];
  if (v.kind == VarKind::HopfPlus) w[static_cast<std::size_t>(v.index - 1)] = 1;
  if (v.kind == VarKind::HopfMinus) w[static_cast<std::size_t>(v.index - 1)] = -1;
  return w;
}

std::string VariableSpace::varName(int i) const {
  const Variable& v = vars_[static_cast<std::size_t>(i)];
  switch (v.kind) {
    case VarKind::Zero: return "x0";
    case VarKind::HopfPlus: return "x" + std::to_string(v.index);
    case VarKind::HopfMinus: return "xb" + std::to_string(v.index);
    case VarKind::Delayed: return "v" + std::to_string(v.index);
    case VarKind::RadialZero: return "r0";
    case VarKind::Radial: return "r" + std::to_string(v.index);
    case VarKind::Param: return "mu" + std::to_string(v.index);
  }
  return "?";
}

bool VariableSpace::operator==(const VariableSpace& o) const {
  if (size() != o.size()) return false;
  for (int i = 0; i < size(); ++i) {
    if (vars_[static_cast<std::size_t>(i)].kind != o.vars_[static_cast<std::size_t>(i)].kind ||
        vars_[static_cast<std::size_t>(i)].index != o.vars_[static_cast<std::size_t>(i)].index)
      return false;
  }
  return true;
}

Monomial::Monomial(std::vector<int> exponents) : e_(std::move(exponents)) {
  for (int x : e_) {
    if (x < 0) throw std::invalid_argument("Monomial: negative exponent");
  }
}

Monomial Monomial::unit(int nvars) { return Monomial(std::vector<int>(static_cast<std::size_t>(nvars), 0)); }

Monomial Monomial::single(int nvars, int var, int power) {
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  e.at(static_cast<std::size_t>(var)) = power;
  return Monomial(std::move(e));
}

int Monomial::degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

Monomial Monomial::times(const Monomial& o) const {
  if (e_.size() != o.e_.size()) throw std::invalid_argument("Monomial: size mismatch");
  std::vector<int> e(e_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.e_[i];
  return Monomial(std::move(e));
}

std::vector<int> Monomial::weight(const VariableSpace& space) const {
  std::vector<int> w(static_cast<std::size_t>(space.p()), 0);
  for (int i = 0; i < size(); ++i) {
    if (e_[static_cast<std::size_t>(i)] == 0) continue;
    const Variable& v = space.var(i);
    if (v.kind == VarKind::HopfPlus) w[static_cast<std::size_t>(v.index - 1)] += e_[static_cast<std::size_t>(i)];
    if (v.kind == VarKind::HopfMinus) w[static_cast<std::size_t>(v.index - 1)] -= e_[static_cast<std::size_t>(i)];
  }
  return w;
}

int Monomial::degreeOfKind(const VariableSpace& space, VarKind kind) const {
  int d = 0;
  for (int i = 0; i < size(); ++i) {
    if (space.var(i).kind == kind) d += e_[static_cast<std::size_t>(i)];
  }
  return d;
}

bool Monomial::operator<(const Monomial& o) const {
  const int da = degree();
  const int db = o.degree();
  if (da != db) return da < db;
  return e_ < o.e_;
}

std::string Monomial::str(const VariableSpace& space) const {
  std::string out;
  for (int i = 0; i < size(); ++i) {
    const int k = e_[static_cast<std::size_t>(i)];
    if (k == 0) continue;
    if (!out.empty()) out += "*";
    out += space.varName(i);
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "1" : out;
}

}  // namespace ddnf
