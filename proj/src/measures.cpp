#include "polact/measures.hpp"

#include "polact/error.hpp"

namespace polact {

PMeasure::PMeasure(TailedSeq seq) : seq_(std::move(seq)) {
  require(seq_.base() == 0, ErrorCode::InvalidArgument, "measure must start at index 0");
  require(seq_.mode() == ScalarMode::ExactReal, ErrorCode::InvalidArgument, "measure must be exact real");
  require(seq_.tail().kind() == TailKind::Geometric, ErrorCode::InvalidArgument, "measure needs a geometric tail");
  require(seq_.positive(), ErrorCode::Invariant, "measure atoms must be positive");
  Rational mass = sum_from(seq_, 0).real_part();
  require(mass == 1, ErrorCode::Invariant, "measure has total mass " + to_string(mass) + ", not 1");
}

PMeasure PMeasure::geometric(std::vector<Scalar> prefix, const Rational& a, const Rational& r) {
  return PMeasure(TailedSeq::geometric(0, std::move(prefix), Scalar(a), Scalar(r)));
}

Rational expectation(const PMeasure& P, const TailedSeq& x) {
  auto prod = pointwise_mul(x, P.seq());
  require_l1(prod, "weighted sequence");
  return sum_from(prod, 0).real_part();
}

DensityVar::DensityVar(TailedSeq seq, PMeasure anchor) : seq_(std::move(seq)), anchor_(std::move(anchor)) {
  require(seq_.base() == 0 && seq_.mode() == ScalarMode::ExactReal, ErrorCode::InvalidArgument,
          "density must be exact real with base 0");
  require(seq_.positive(), ErrorCode::Invariant, "density must be positive");
  Rational e = expectation(anchor_, seq_);
  require(e == 1, ErrorCode::Invariant, "density has expectation " + to_string(e) + ", not 1");
}

DensityVar normalize(const PMeasure& P, const TailedSeq& x) {
  require(x.positive(), ErrorCode::InvalidArgument, "normalize needs a positive sequence");
  Rational e = expectation(P, x);
  return DensityVar(scaled(Scalar(Rational(1 / e)), x), P);
}

DensityVar constant_density(const PMeasure& P) {
  return DensityVar(TailedSeq::constant(0, {}, Scalar(Rational(1))), P);
}

Enclosure weighted_l1_norm(const PMeasure& P, const TailedSeq& xi, const Rational& tol) {
  auto prod = pointwise_mul(xi, P.seq().to_mode(xi.mode()));
  require(prod.summable(), ErrorCode::Domain, "weighted norm diverges");
  return l1_norm(prod, tol);
}

Enclosure weighted_l1_dist(const PMeasure& P, const TailedSeq& a, const TailedSeq& b, const Rational& tol) {
  auto pa = pointwise_mul(a, P.seq().to_mode(a.mode()));
  auto pb = pointwise_mul(b, P.seq().to_mode(b.mode()));
  require(pa.summable() && pb.summable(), ErrorCode::Domain, "weighted distance diverges");
  return l1_dist(pa, pb, tol);
}

namespace {

void require_anchor(const PMeasure& P, const DensityVar& xi) {
  require(xi.anchor() == P, ErrorCode::InvalidArgument, "density is anchored to a different measure");
}

}  // namespace

PMeasure phi(const PMeasure& P, const DensityVar& xi) {
  require_anchor(P, xi);
  return PMeasure(pointwise_mul(xi.seq(), P.seq()).trimmed());
}

DensityVar e_related(const PMeasure& P, const PMeasure& Q) {
  return DensityVar(pointwise_div(Q.seq(), P.seq()).trimmed(), P);
}

DensityVar inverse_density(const DensityVar& xi) {
  return DensityVar(pointwise_inv(xi.seq()).trimmed(), phi(xi.anchor(), xi));
}

StrongApproxWitness strong_approx_witness(const PMeasure& P, const DensityVar& xi, const Rational& eps) {
  require_anchor(P, xi);
  require(eps > 0, ErrorCode::InvalidArgument, "strong_approx_witness needs eps > 0");
  auto weighted = pointwise_mul(xi.seq(), P.seq());
  Rational half = eps / 2;
  StrongApproxWitness w{GroupElement::identity(GroupDomain::PositiveReal, 0), 0, 0, 0, 0, 0};
  for (Index N = 0;; ++N) {
    Rational tp = sum_from(P.seq(), N + 1).real_part();
    Rational tx = sum_from(weighted, N + 1).real_part();
    if (tp < half && tx < half) {
      w.N = N;
      w.tail_mass = tp;
      w.tail_density = tx;
      break;
    }
  }
  std::vector<Scalar> prefix;
  for (Index n = 0; n <= w.N; ++n) prefix.push_back(xi.seq().entry(n));
  w.g = GroupElement(TailedSeq::constant(0, std::move(prefix), Scalar(Rational(1))).trimmed(),
                     GroupDomain::PositiveReal);
  w.residual = l1_dist_from(weighted, P.seq(), w.N + 1).value();
  w.expectation_g = expectation(P, w.g.seq());
  require(w.residual < eps, ErrorCode::Invariant, "strong approximation residual not below eps");
  return w;
}

DensityVar psi(const PMeasure& P, const DensityVar& xi, const DensityVar& zeta) {
  require_anchor(P, xi);
  require_anchor(P, zeta);
  return DensityVar(pointwise_div(zeta.seq(), xi.seq()).trimmed(), phi(P, xi));
}

StrongApproxCert make_strong_approx_cert(const PMeasure& P, const PMeasure& Q, const Rational& eps,
                                         const DensityVar& zeta1, const DensityVar& zeta2) {
  auto xi = e_related(P, Q);
  auto w = strong_approx_witness(P, xi, eps);
  auto p1 = psi(P, xi, zeta1), p2 = psi(P, xi, zeta2);
  Rational lhs = weighted_l1_dist(Q, p1.seq(), p2.seq()).value();
  Rational rhs = weighted_l1_dist(P, zeta1.seq(), zeta2.seq()).value();
  return StrongApproxCert{P, Q, xi, eps, w, zeta1, zeta2, lhs, rhs};
}

Json to_json(const StrongApproxCert& c) {
  return Json{
      {"P", to_json(c.P.seq())},
      {"Q", to_json(c.Q.seq())},
      {"xi", to_json(c.xi.seq())},
      {"epsilon", exact_json(c.eps)},
      {"approximant",
       {{"N", c.witness.N},
        {"g", to_json(c.witness.g.seq())},
        {"residual", exact_json(c.witness.residual)},
        {"tail_mass", exact_json(c.witness.tail_mass)},
        {"tail_density", exact_json(c.witness.tail_density)},
        {"expectation_g", exact_json(c.witness.expectation_g)}}},
      {"isometry",
       {{"zeta1", to_json(c.zeta1.seq())},
        {"zeta2", to_json(c.zeta2.seq())},
        {"psi_dist", exact_json(c.psi_dist)},
        {"zeta_dist", exact_json(c.zeta_dist)}}},
  };
}

CertCheck verify_cert(const Json& j) {
  CertCheck out;
  auto check = [&](const std::string& name, auto&& fn) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception&) {
      ok = false;
    }
    (ok ? out.checks : out.failures).push_back(name);
    if (!ok) out.ok = false;
    return ok;
  };
  auto frac = [](const Json& v) { return parse_rational(v.at("fraction").get<std::string>()); };

  std::optional<PMeasure> P, Q;
  std::optional<DensityVar> xi;
  if (!check("P is a probability measure", [&] { return (P.emplace(seq_from_json(j.at("P"))), true); })) return out;
  if (!check("Q is a probability measure", [&] { return (Q.emplace(seq_from_json(j.at("Q"))), true); })) return out;
  if (!check("xi is a density for P", [&] { return (xi.emplace(seq_from_json(j.at("xi")), *P), true); })) return out;
  check("Q = Phi_P(xi)", [&] { return phi(*P, *xi) == *Q; });

  const Json& a = j.at("approximant");
  check("approximant", [&] {
    Rational eps = frac(j.at("epsilon"));
    Index N = a.at("N").get<Index>();
    auto g = seq_from_json(a.at("g"));
    GroupElement ge(g, GroupDomain::PositiveReal);
    std::vector<Scalar> head;
    for (Index n = 0; n <= N; ++n) head.push_back(xi->seq().entry(n));
    if (!(g == TailedSeq::constant(0, std::move(head), Scalar(Rational(1))))) return false;
    Rational residual = weighted_l1_dist(*P, xi->seq(), g).value();
    Rational tp = sum_from(P->seq(), N + 1).real_part();
    Rational tx = sum_from(pointwise_mul(xi->seq(), P->seq()), N + 1).real_part();
    return residual == frac(a.at("residual")) && residual < eps && tp == frac(a.at("tail_mass")) &&
           tx == frac(a.at("tail_density")) && tp < eps / 2 && tx < eps / 2 &&
           expectation(*P, g) == frac(a.at("expectation_g"));
  });

  const Json& iso = j.at("isometry");
  check("Psi isometry", [&] {
    DensityVar z1(seq_from_json(iso.at("zeta1")), *P), z2(seq_from_json(iso.at("zeta2")), *P);
    auto p1 = psi(*P, *xi, z1), p2 = psi(*P, *xi, z2);
    Rational lhs = weighted_l1_dist(*Q, p1.seq(), p2.seq()).value();
    Rational rhs = weighted_l1_dist(*P, z1.seq(), z2.seq()).value();
    return lhs == rhs && lhs == frac(iso.at("psi_dist")) && rhs == frac(iso.at("zeta_dist"));
  });
  check("Psi inverse law", [&] {
    DensityVar z1(seq_from_json(iso.at("zeta1")), *P);
    auto inv = inverse_density(*xi);
    return psi(*Q, inv, psi(*P, *xi, z1)).seq() == z1.seq();
  });
  check("Psi composition", [&] {
    DensityVar z1(seq_from_json(iso.at("zeta1")), *P);
    return phi(*Q, psi(*P, *xi, z1)) == phi(*P, z1);
  });
  return out;
}

}  // namespace polact
