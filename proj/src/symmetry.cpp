#include "ddnf/symmetry.hpp"

#include <algorithm>
#include <stdexcept>

namespace ddnf {

namespace {

const Complex kI(0.0, 1.0);

// All nonnegative integer tuples of the given length summing to total, in
// lexicographic order.
void compositionsRec(int total, int parts, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int head = 0; head <= total; ++head) {
    cur.push_back(head);
    compositionsRec(total - head, parts - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  if (parts == 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  std::vector<int> cur;
  compositionsRec(total, parts, cur, out);
  return out;
}

// One equivariant basis pattern: a pair component c (1..p) with odd power,
// or the even sector (comp = 0, requires a zero root unless the monomial is
// even in every pair).  For d = p only pair patterns exist.
struct Pattern {
  int comp = 0;            // radial component index (0-based)
  std::vector<int> q;      // parameter exponents
  int k0 = 0;              // power of the zero-slot variable
  std::vector<int> k;      // half-powers of the pairs
  int oddPair = -1;        // which pair carries the odd factor, -1 for even sector
};

std::vector<Pattern> enumeratePatterns(const SpectrumSpec& spec, int grade, int s) {
  std::vector<Pattern> pats;
  const int p = spec.p;
  const bool iz = spec.includesZero;
  // Odd sector: |q| + k0 + 2|k| + 1 = grade, one pair odd.
  for (int c = 1; c <= p; ++c) {
    for (int qsum = 0; qsum + 1 <= grade; ++qsum) {
      for (const auto& q : compositions(qsum, s)) {
        const int rest = grade - 1 - qsum;
        const int k0max = iz ? rest : 0;
        for (int k0 = 0; k0 <= k0max; ++k0) {
          if ((rest - k0) % 2 != 0) continue;
          for (const auto& k : compositions((rest - k0) / 2, p)) {
            Pattern pat;
            pat.comp = (iz ? c : c - 1);
            pat.q = q;
            pat.k0 = k0;
            pat.k = k;
            pat.oddPair = c;
            pats.push_back(std::move(pat));
          }
        }
      }
    }
  }
  // Even sector exists only with a zero root: |q| + k0 + 2|k| = grade.
  if (iz) {
    for (int qsum = 0; qsum <= grade; ++qsum) {
      for (const auto& q : compositions(qsum, s)) {
        const int rest = grade - qsum;
        for (int k0 = 0; k0 <= rest; ++k0) {
          if ((rest - k0) % 2 != 0) continue;
          for (const auto& k : compositions((rest - k0) / 2, p)) {
            Pattern pat;
            pat.comp = 0;
            pat.q = q;
            pat.k0 = k0;
            pat.k = k;
            pat.oddPair = -1;
            pats.push_back(std::move(pat));
          }
        }
      }
    }
  }
  return pats;
}

Monomial radialMonomialOf(const Pattern& pat, const SpectrumSpec& spec,
                          const VariableSpace& rspace) {
  std::vector<int> e(static_cast<std::size_t>(rspace.size()), 0);
  int idx = 0;
  if (spec.includesZero) e[static_cast<std::size_t>(idx++)] = pat.k0;
  for (int j = 0; j < spec.p; ++j) {
    int power = 2 * pat.k[static_cast<std::size_t>(j)];
    if (pat.oddPair == j + 1) power += 1;
    e[static_cast<std::size_t>(idx++)] = power;
  }
  for (std::size_t t = 0; t < pat.q.size(); ++t) e[static_cast<std::size_t>(idx++)] = pat.q[t];
  return Monomial(std::move(e));
}

Monomial delayedMonomialOf(const Pattern& pat, const SpectrumSpec& spec,
                           const VariableSpace& vspace) {
  std::vector<int> e(static_cast<std::size_t>(vspace.size()), 0);
  int idx = 0;
  if (spec.includesZero) e[static_cast<std::size_t>(idx++)] = pat.k0;
  for (int j = 0; j < spec.p; ++j) {
    int power = 2 * pat.k[static_cast<std::size_t>(j)];
    if (pat.oddPair == j + 1) power += 1;
    e[static_cast<std::size_t>(idx++)] = power;
  }
  for (std::size_t t = 0; t < pat.q.size(); ++t) e[static_cast<std::size_t>(idx++)] = pat.q[t];
  return Monomial(std::move(e));
}

void sortPatterns(std::vector<Pattern>& pats, const SpectrumSpec& spec,
                  const VariableSpace& rspace) {
  std::sort(pats.begin(), pats.end(), [&](const Pattern& a, const Pattern& b) {
    if (a.comp != b.comp) return a.comp < b.comp;
    return radialMonomialOf(a, spec, rspace) < radialMonomialOf(b, spec, rspace);
  });
}

bool muVanishing(const Pattern& pat) {
  for (int qi : pat.q) {
    if (qi > 0) return true;
  }
  return false;
}

// Every monomial of the target grade over the given space.
std::vector<Monomial> monomialsOfGrade(const VariableSpace& space, int grade) {
  std::vector<Monomial> out;
  for (auto& e : compositions(grade, space.size())) out.emplace_back(std::move(e));
  std::sort(out.begin(), out.end());
  return out;
}

ScalarPoly realCoefficientPart(const ScalarPoly& a, bool imag) {
  ScalarPoly out(a.space());
  for (const auto& [m, c] : a.terms()) {
    const double v = imag ? c.imag() : c.real();
    if (std::abs(v) > ScalarPoly::kDropTol) out.addTerm(m, Complex(v, 0.0));
  }
  return out;
}

void requireCenterField(const VectorPoly& f) {
  if (f.space().numDelayed() != 0)
    throw std::invalid_argument("projectA: field must live over center variables only");
  if (f.components() != f.space().centerCount())
    throw std::invalid_argument("projectA: one component per center variable required");
}

}  // namespace

RealizationBasis enumerateBasis(const SpectrumSpec& spec, BasisTag tag, int grade, int s) {
  if (grade < 0) throw std::invalid_argument("enumerateBasis: negative grade");
  const int d = spec.d();
  RealizationBasis basis;
  basis.space = VariableSpace::delayed(d, s);

  if (tag == BasisTag::Full || tag == BasisTag::FullMuFree) {
    for (const Monomial& m : monomialsOfGrade(basis.space, grade)) {
      if (tag == BasisTag::FullMuFree && m.degreeOfKind(basis.space, VarKind::Param) > 0) continue;
      basis.elements.push_back(ScalarPoly::term(basis.space, m, Complex(1.0, 0.0)));
    }
    return basis;
  }

  std::vector<Pattern> pats = enumeratePatterns(spec, grade, s);
  const VariableSpace rspace = VariableSpace::radial(spec.p, spec.includesZero, s);
  sortPatterns(pats, spec, rspace);
  const bool wantMuFree = (tag == BasisTag::VMuFree || tag == BasisTag::VhatMuFree);
  const bool wantMuVanishing = (tag == BasisTag::W || tag == BasisTag::What);
  const bool hatted = (tag == BasisTag::Vhat || tag == BasisTag::VhatMuFree || tag == BasisTag::What);

  MatC kinv;
  if (hatted) {
    const MatD K = kMatrix(d);
    kinv = K.inverse().cast<Complex>();
  }
  for (const Pattern& pat : pats) {
    if (wantMuFree && muVanishing(pat)) continue;
    if (wantMuVanishing && !muVanishing(pat)) continue;
    ScalarPoly el = ScalarPoly::term(basis.space, delayedMonomialOf(pat, spec, basis.space),
                                     Complex(1.0, 0.0));
    if (hatted) el = composeLinear(el, kinv, basis.space);
    basis.elements.push_back(std::move(el));
  }
  return basis;
}

RadialBasis enumerateRadialBasis(const SpectrumSpec& spec, RadialTag tag, int grade, int s) {
  RadialBasis basis;
  basis.space = VariableSpace::radial(spec.p, spec.includesZero, s);
  std::vector<Pattern> pats = enumeratePatterns(spec, grade, s);
  sortPatterns(pats, spec, basis.space);
  for (const Pattern& pat : pats) {
    if (tag == RadialTag::MuFree && muVanishing(pat)) continue;
    if (tag == RadialTag::MuVanishing && !muVanishing(pat)) continue;
    basis.elements.emplace_back(pat.comp, radialMonomialOf(pat, spec, basis.space));
  }
  return basis;
}

VecD radialCoordinates(const VectorPoly& radial, const RadialBasis& basis, double tol) {
  VecD coords = VecD::Zero(static_cast<Index>(basis.elements.size()));
  std::vector<std::pair<int, Monomial>> seen;
  for (std::size_t i = 0; i < basis.elements.size(); ++i) {
    const auto& [c, m] = basis.elements[i];
    const Complex v = radial.comp(c).coeff(m);
    if (std::abs(v.imag()) > tol)
      throw std::invalid_argument("radialCoordinates: complex coefficient in radial data");
    coords(static_cast<Index>(i)) = v.real();
  }
  // Any term outside the catalog means the input was not in the target space.
  for (int c = 0; c < radial.components(); ++c) {
    for (const auto& [m, v] : radial.comp(c).terms()) {
      bool found = false;
      for (const auto& [bc, bm] : basis.elements) {
        if (bc == c && bm == m) {
          found = true;
          break;
        }
      }
      if (!found && std::abs(v) > tol)
        throw std::invalid_argument("radialCoordinates: term outside the equivariant catalog: component " +
                                    std::to_string(c) + " monomial " + m.str(radial.space()));
    }
  }
  return coords;
}

VectorPoly radialFromCoordinates(const VecD& coords, const RadialBasis& basis) {
  VectorPoly out(basis.space, basis.space.includesZero() ? basis.space.p() + 1 : basis.space.p());
  if (coords.size() != static_cast<Index>(basis.elements.size()))
    throw std::invalid_argument("radialFromCoordinates: coordinate count mismatch");
  for (std::size_t i = 0; i < basis.elements.size(); ++i) {
    const auto& [c, m] = basis.elements[i];
    out.comp(c).addTerm(m, Complex(coords(static_cast<Index>(i)), 0.0));
  }
  return out;
}

Complex homologicalEigenvalue(const SpectrumSpec& spec, const VariableSpace& space,
                              const Monomial& m, int component) {
  Complex acc(0.0, 0.0);
  for (int i = 0; i < space.size(); ++i) {
    const int e = m.exponent(i);
    if (e == 0) continue;
    const Variable& v = space.var(i);
    if (v.kind == VarKind::HopfPlus)
      acc += static_cast<double>(e) * kI * spec.omegas[static_cast<std::size_t>(v.index - 1)];
    if (v.kind == VarKind::HopfMinus)
      acc -= static_cast<double>(e) * kI * spec.omegas[static_cast<std::size_t>(v.index - 1)];
  }
  if (component >= 0) {
    const Variable& vc = space.var(component);
    if (vc.kind == VarKind::HopfPlus)
      acc -= kI * spec.omegas[static_cast<std::size_t>(vc.index - 1)];
    if (vc.kind == VarKind::HopfMinus)
      acc += kI * spec.omegas[static_cast<std::size_t>(vc.index - 1)];
  }
  return acc;
}

VectorPoly projectA(const VectorPoly& f) {
  requireCenterField(f);
  const VariableSpace& sp = f.space();
  VectorPoly out(sp, f.components());
  for (int c = 0; c < f.components(); ++c) {
    const std::vector<int> wc = sp.weightOf(c);
    for (const auto& [m, coef] : f.comp(c).terms()) {
      if (m.weight(sp) == wc) out.comp(c).addTerm(m, coef);
    }
  }
  return out;
}

VectorPoly applyHomological(const SpectrumSpec& spec, const VectorPoly& f) {
  requireCenterField(f);
  VectorPoly out(f.space(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    for (const auto& [m, coef] : f.comp(c).terms()) {
      const Complex ev = homologicalEigenvalue(spec, f.space(), m, c);
      if (std::abs(ev) > ScalarPoly::kDropTol) out.comp(c).addTerm(m, coef * ev);
    }
  }
  return out;
}

namespace {

// Substitution matrix for x0 -> rho0, x_j -> rho_j, conj(x_j) -> rho_j.
MatC foldMatrix(const VariableSpace& center, const VariableSpace& radial) {
  const int nc = center.size() - center.params();
  const int nr = radial.size() - radial.params();
  MatC M = MatC::Zero(nc, nr);
  for (int i = 0; i < nc; ++i) {
    const Variable& v = center.var(i);
    for (int j = 0; j < nr; ++j) {
      const Variable& rv = radial.var(j);
      const bool zero_match = (v.kind == VarKind::Zero && rv.kind == VarKind::RadialZero);
      const bool pair_match = ((v.kind == VarKind::HopfPlus || v.kind == VarKind::HopfMinus) &&
                               rv.kind == VarKind::Radial && rv.index == v.index);
      if (zero_match || pair_match) M(i, j) = Complex(1.0, 0.0);
    }
  }
  return M;
}

void requireEquivariant(const VectorPoly& f, double tol) {
  VectorPoly res = f - projectA(f);
  const double scale = std::max(1.0, f.maxAbsCoeff());
  if (res.maxAbsCoeff() > tol * scale)
    throw std::invalid_argument("projectPi: input field is not equivariant (non-resonant residue)");
}

}  // namespace

VectorPoly projectPi(const VectorPoly& f, const SpectrumSpec& spec, double tol) {
  requireCenterField(f);
  requireEquivariant(f, tol);
  if (!isRealField(f, tol * std::max(1.0, f.maxAbsCoeff())))
    throw std::invalid_argument("projectPi: input is not a real field");
  const VariableSpace& csp = f.space();
  const VariableSpace rsp = VariableSpace::radial(spec.p, spec.includesZero, csp.params());
  const MatC M = foldMatrix(csp, rsp);
  VectorPoly out(rsp, spec.d());
  int comp_out = 0;
  for (int c = 0; c < f.components(); ++c) {
    const Variable& v = csp.var(c);
    if (v.kind == VarKind::HopfMinus) continue;  // covered by its partner
    ScalarPoly folded = composeLinear(f.comp(c), M, rsp);
    // Real field => real part of the coefficients is the radial datum; for
    // the zero slot the fold is already real.
    out.comp(comp_out++) = realCoefficientPart(folded, /*imag=*/false);
  }
  return out;
}

VectorPoly angularPart(const VectorPoly& f, const SpectrumSpec& spec, double tol) {
  requireCenterField(f);
  requireEquivariant(f, tol);
  const VariableSpace& csp = f.space();
  const VariableSpace rsp = VariableSpace::radial(spec.p, spec.includesZero, csp.params());
  const MatC M = foldMatrix(csp, rsp);
  VectorPoly out(rsp, spec.p);
  int comp_out = 0;
  for (int c = 0; c < f.components(); ++c) {
    if (csp.var(c).kind != VarKind::HopfPlus) continue;
    ScalarPoly folded = composeLinear(f.comp(c), M, rsp);
    out.comp(comp_out++) = realCoefficientPart(folded, /*imag=*/true);
  }
  return out;
}

VectorPoly projectPiViaTorusPoint(const VectorPoly& f, const SpectrumSpec& spec,
                                  const std::vector<double>& phases, double tol) {
  requireCenterField(f);
  requireEquivariant(f, tol);
  if (static_cast<int>(phases.size()) != spec.p)
    throw std::invalid_argument("projectPiViaTorusPoint: one phase per Hopf pair");
  const VariableSpace& csp = f.space();
  const VariableSpace rsp = VariableSpace::radial(spec.p, spec.includesZero, csp.params());
  // gamma^{-1} R: x_j -> e^{-i phi_j} rho_j, conj slot with +phi, x0 -> rho0.
  const int nc = csp.size() - csp.params();
  const int nr = rsp.size() - rsp.params();
  MatC M = MatC::Zero(nc, nr);
  for (int i = 0; i < nc; ++i) {
    const Variable& v = csp.var(i);
    for (int j = 0; j < nr; ++j) {
      const Variable& rv = rsp.var(j);
      if (v.kind == VarKind::Zero && rv.kind == VarKind::RadialZero) M(i, j) = 1.0;
      if (v.kind == VarKind::HopfPlus && rv.kind == VarKind::Radial && rv.index == v.index)
        M(i, j) = std::exp(-kI * phases[static_cast<std::size_t>(v.index - 1)]);
      if (v.kind == VarKind::HopfMinus && rv.kind == VarKind::Radial && rv.index == v.index)
        M(i, j) = std::exp(kI * phases[static_cast<std::size_t>(v.index - 1)]);
    }
  }
  VectorPoly out(rsp, spec.d());
  int comp_out = 0;
  for (int c = 0; c < f.components(); ++c) {
    const Variable& v = csp.var(c);
    if (v.kind == VarKind::HopfMinus) continue;
    ScalarPoly folded = composeLinear(f.comp(c), M, rsp);
    if (v.kind == VarKind::Zero) {
      out.comp(comp_out++) = realCoefficientPart(folded, false);
    } else {
      // gamma multiplies the component back, then the conjugate pair is
      // averaged; for a real field this is the real part of the rotated
      // coefficients.
      const Complex rot = std::exp(kI * phases[static_cast<std::size_t>(v.index - 1)]);
      ScalarPoly rotated = rot * folded;
      out.comp(comp_out++) = realCoefficientPart(rotated, false);
    }
  }
  return out;
}

MatD kMatrix(int d) {
  if (d <= 0) throw std::invalid_argument("kMatrix: d must be positive");
  MatD K(d, d);
  for (int j = 1; j <= d; ++j) {
    for (int k = 1; k <= d; ++k) K(j - 1, k - 1) = (j + k > d + 1) ? -1.0 : 1.0;
  }
  return K;
}

VecC timeAverageOfFlow(const VectorPoly& f, const SpectrumSpec& spec, const VecC& x, double T) {
  requireCenterField(f);
  if (x.size() != f.space().size())
    throw std::invalid_argument("timeAverageOfFlow: point dimension mismatch");
  // 10-point Gauss-Legendre nodes/weights on [-1, 1].
  static const double gx[10] = {-0.9739065285171717, -0.8650633666889845, -0.6794095682990244,
                                -0.4333953941292472, -0.1488743389816312, 0.1488743389816312,
                                0.4333953941292472,  0.6794095682990244,  0.8650633666889845,
                                0.9739065285171717};
  static const double gw[10] = {0.0666713443086881, 0.1494513491505806, 0.2190863625159820,
                                0.2692667193099963, 0.2955242247147529, 0.2955242247147529,
                                0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
                                0.0666713443086881};
  const std::vector<Complex> ev = spec.centerEigenvalues();
  const int kappa = f.components();
  VecC acc = VecC::Zero(kappa);
  const double panel = std::min(0.5, T);
  const int npanels = std::max(1, static_cast<int>(std::ceil(T / panel)));
  const double h = T / npanels;
  VecC y(x.size());
  for (int pn = 0; pn < npanels; ++pn) {
    const double a = pn * h;
    for (int g = 0; g < 10; ++g) {
      const double s = a + 0.5 * h * (gx[g] + 1.0);
      // y = e^{-Bs} x on center coordinates, parameters fixed.
      for (Index i = 0; i < x.size(); ++i) {
        if (i < kappa) {
          y(i) = std::exp(-ev[static_cast<std::size_t>(i)] * s) * x(i);
        } else {
          y(i) = x(i);
        }
      }
      for (int c = 0; c < kappa; ++c) {
        acc(c) += gw[g] * 0.5 * h * std::exp(ev[static_cast<std::size_t>(c)] * s) *
                  f.comp(c).evaluate(y);
      }
    }
  }
  return acc / T;
}

DimsReport dims(const SpectrumSpec& spec, int numDelays, int ell, int s) {
  if (ell < 2) throw std::invalid_argument("dims: order must be at least 2");
  if (numDelays < 1) throw std::invalid_argument("dims: need at least one delay");
  DimsReport rep;
  rep.p = spec.p;
  rep.includesZero = spec.includesZero;
  rep.s = s;
  rep.ell = ell;
  rep.numDelays = numDelays;
  const VariableSpace vfull = VariableSpace::delayed(numDelays, 0);
  for (int j = 2; j <= ell; ++j) {
    GradeDims g;
    g.grade = j;
    g.full = static_cast<int>(monomialsOfGrade(vfull, j).size());
    g.v = static_cast<int>(enumerateBasis(spec, BasisTag::V, j, s).elements.size());
    g.vMuFree = static_cast<int>(enumerateBasis(spec, BasisTag::VMuFree, j, s).elements.size());
    g.w = static_cast<int>(enumerateBasis(spec, BasisTag::W, j, s).elements.size());
    g.radial = static_cast<int>(enumerateRadialBasis(spec, RadialTag::All, j, s).elements.size());
    g.radialMuFree =
        static_cast<int>(enumerateRadialBasis(spec, RadialTag::MuFree, j, s).elements.size());
    g.radialMuVanishing =
        static_cast<int>(enumerateRadialBasis(spec, RadialTag::MuVanishing, j, s).elements.size());
    rep.fullTotal += g.full;
    rep.radialMuFreeTotal += g.radialMuFree;
    rep.grades.push_back(g);
  }
  // binom(m + ell, m) - m - 1 counts v-only monomials of degrees 2..ell.
  long long binom = 1;
  for (int i = 1; i <= numDelays; ++i) binom = binom * (ell + i) / i;
  rep.fullTotalClosedForm = binom - numDelays - 1;
  if (spec.p == 2 && !spec.includesZero && s == 0) {
    const long long L = ell / 2;
    rep.doubleHopfFormula = L * (L + 3);
    rep.doubleHopfFormulaMatches = (rep.doubleHopfFormula == rep.radialMuFreeTotal);
  }
  rep.sourceCoversTarget = rep.fullTotal >= rep.radialMuFreeTotal;
  return rep;
}

}  // namespace ddnf
