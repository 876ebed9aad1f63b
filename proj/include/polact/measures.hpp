#pragma once

#include <string>
#include <vector>

#include "polact/groups.hpp"
#include "polact/serialize.hpp"

namespace polact {

// Probability measure on N: base 0, positive exact real atoms, geometric
// tail, total mass exactly 1.
class PMeasure {
 public:
  explicit PMeasure(TailedSeq seq);
  // Geometric(a, r) after the given prefix.
  static PMeasure geometric(std::vector<Scalar> prefix, const Rational& a, const Rational& r);

  const TailedSeq& seq() const { return seq_; }
  Rational atom(Index n) const { return seq_.entry(n).real_part(); }

  friend bool operator==(const PMeasure& a, const PMeasure& b) { return a.seq_ == b.seq_; }

 private:
  TailedSeq seq_;
};

// Sum of x(n) P({n}); x P must be summable.
Rational expectation(const PMeasure& P, const TailedSeq& x);

// Density xi in Gamma_P: positive entries with expectation exactly 1.
class DensityVar {
 public:
  DensityVar(TailedSeq seq, PMeasure anchor);

  const TailedSeq& seq() const { return seq_; }
  const PMeasure& anchor() const { return anchor_; }
  Rational at(Index n) const { return seq_.entry(n).real_part(); }

 private:
  TailedSeq seq_;
  PMeasure anchor_;
};

// Rescales a positive sequence by its P-expectation.
DensityVar normalize(const PMeasure& P, const TailedSeq& x);
DensityVar constant_density(const PMeasure& P);

// sum |xi(n)| P({n}); Domain error when the sum diverges.
Enclosure weighted_l1_norm(const PMeasure& P, const TailedSeq& xi, const Rational& tol = default_tolerance());
Enclosure weighted_l1_dist(const PMeasure& P, const TailedSeq& a, const TailedSeq& b,
                           const Rational& tol = default_tolerance());

// (Phi_P(xi))({n}) = xi(n) P({n})
PMeasure phi(const PMeasure& P, const DensityVar& xi);
// The xi with Q = Phi_P(xi).
DensityVar e_related(const PMeasure& P, const PMeasure& Q);
// 1/xi as a density for Phi_P(xi).
DensityVar inverse_density(const DensityVar& xi);

struct StrongApproxWitness {
  GroupElement g;  // (xi(0), ..., xi(N), 1, 1, ...)
  Index N = 0;
  Rational residual;       // sum over n > N of |xi(n) - 1| P({n})
  Rational tail_mass;      // sum over n > N of P({n})
  Rational tail_density;   // sum over n > N of xi(n) P({n})
  Rational expectation_g;  // generally not 1
};
StrongApproxWitness strong_approx_witness(const PMeasure& P, const DensityVar& xi, const Rational& eps);

// (Psi_{P,xi}(zeta))(n) = zeta(n) / xi(n), anchored to Phi_P(xi).
DensityVar psi(const PMeasure& P, const DensityVar& xi, const DensityVar& zeta);

// Everything needed to re-check a strong approximation of Q from P.
struct StrongApproxCert {
  PMeasure P;
  PMeasure Q;
  DensityVar xi;
  Rational eps;
  StrongApproxWitness witness;
  DensityVar zeta1;
  DensityVar zeta2;
  Rational psi_dist;   // ||Psi(zeta1) - Psi(zeta2)|| in L1(Q)
  Rational zeta_dist;  // ||zeta1 - zeta2|| in L1(P)
};
StrongApproxCert make_strong_approx_cert(const PMeasure& P, const PMeasure& Q, const Rational& eps,
                                         const DensityVar& zeta1, const DensityVar& zeta2);

Json to_json(const StrongApproxCert& c);

struct CertCheck {
  bool ok = true;
  std::vector<std::string> checks;    // names of identities that held
  std::vector<std::string> failures;  // names of identities that failed
};
// Re-checks every identity of a serialized certificate from the record alone.
CertCheck verify_cert(const Json& j);

}  // namespace polact
