#include "polact/tailed_seq.hpp"

#include <algorithm>

#include "polact/error.hpp"

namespace polact {

std::string_view tail_kind_name(TailKind k) {
  switch (k) {
    case TailKind::Constant:
      return "const";
    case TailKind::Geometric:
      return "geom";
    case TailKind::ReciprocalGeometric:
      return "rgeom";
    case TailKind::Unimodular:
      return "power";
  }
  return "?";
}

TailModel::TailModel(Scalar coef, Scalar ratio, Index start)
    : coef_(std::move(coef)), ratio_(std::move(ratio)), start_(start) {
  if (coef_.mode() != ratio_.mode()) {
    fail(ErrorCode::ModeMismatch, "tail coefficient and ratio have different modes");
  }
  require(!coef_.is_zero(), ErrorCode::Domain, "tail coefficient must be nonzero");
  require(!ratio_.is_zero(), ErrorCode::Domain, "tail ratio must be nonzero");
}

TailModel TailModel::constant(Scalar c, Index start) {
  Scalar one = c.one_like();
  return TailModel(std::move(c), std::move(one), start);
}

TailModel TailModel::geometric(Scalar a, Scalar r, Index start) {
  require(!r.is_zero(), ErrorCode::Domain, "geometric tail requires r != 0");
  require(r.abs2() < 1, ErrorCode::Domain, "geometric tail requires |r| < 1, got r = " + r.to_string());
  return TailModel(std::move(a), std::move(r), start);
}

TailModel TailModel::reciprocal_geometric(const Scalar& a, const Scalar& r, Index start) {
  TailModel g = geometric(a, r, start);
  return g.inv();
}

TailModel TailModel::power(Scalar coef, Scalar ratio, Index start) {
  return TailModel(std::move(coef), std::move(ratio), start);
}

TailKind TailModel::kind() const {
  if (ratio_.is_one()) return TailKind::Constant;
  Rational m = ratio_.abs2();
  if (m < 1) return TailKind::Geometric;
  if (m > 1) return TailKind::ReciprocalGeometric;
  return TailKind::Unimodular;
}

Scalar TailModel::at(Index n) const {
  require(n >= start_, ErrorCode::Index, "tail evaluated before its start");
  if (n == start_ || ratio_.is_one()) return coef_;
  return coef_ * pow(ratio_, n - start_);
}

TailModel TailModel::advanced_to(Index new_start) const {
  require(new_start >= start_, ErrorCode::Index, "tail can only be advanced forward");
  return TailModel(at(new_start), ratio_, new_start);
}

TailModel TailModel::to_mode(ScalarMode m) const {
  return TailModel(coef_.to_mode(m), ratio_.to_mode(m), start_);
}

TailModel TailModel::mul(const TailModel& other) const {
  require(start_ == other.start_, ErrorCode::InvalidArgument, "tail product requires aligned starts");
  return TailModel(coef_ * other.coef_, ratio_ * other.ratio_, start_);
}

TailModel TailModel::inv() const { return TailModel(coef_.inverse(), ratio_.inverse(), start_); }

TailedSeq::TailedSeq(Index base, std::vector<Scalar> prefix, TailModel tail)
    : base_(base), prefix_(std::move(prefix)), tail_(std::move(tail)) {
  require(tail_.start() == base_ + prefix_.size(), ErrorCode::InvalidArgument,
          "tail start must equal base + prefix length");
  for (const auto& s : prefix_) {
    if (s.mode() != tail_.mode()) fail(ErrorCode::ModeMismatch, "prefix entry mode differs from tail mode");
  }
}

TailedSeq TailedSeq::constant(Index base, std::vector<Scalar> prefix, const Scalar& c) {
  Index start = base + prefix.size();
  return TailedSeq(base, std::move(prefix), TailModel::constant(c, start));
}

TailedSeq TailedSeq::geometric(Index base, std::vector<Scalar> prefix, const Scalar& a, const Scalar& r) {
  Index start = base + prefix.size();
  return TailedSeq(base, std::move(prefix), TailModel::geometric(a, r, start));
}

Scalar TailedSeq::entry(Index n) const {
  require(n >= base_, ErrorCode::Index,
          "index " + std::to_string(n) + " below sequence base " + std::to_string(base_));
  if (n < tail_.start()) return prefix_[n - base_];
  return tail_.at(n);
}

TailedSeq TailedSeq::extended_to(Index start) const {
  if (start <= tail_.start()) return *this;
  std::vector<Scalar> p = prefix_;
  for (Index n = tail_.start(); n < start; ++n) p.push_back(tail_.at(n));
  return TailedSeq(base_, std::move(p), tail_.advanced_to(start));
}

TailedSeq TailedSeq::trimmed() const {
  if (mode() == ScalarMode::Float && !tail_.ratio().is_one()) return *this;
  std::vector<Scalar> p = prefix_;
  Scalar coef = tail_.coef();
  while (!p.empty()) {
    Scalar back = coef / tail_.ratio();
    if (!identical(p.back(), back)) break;
    coef = back;
    p.pop_back();
  }
  Index start = base_ + p.size();
  return TailedSeq(base_, std::move(p), TailModel::power(coef, tail_.ratio(), start));
}

TailedSeq TailedSeq::to_mode(ScalarMode m) const {
  std::vector<Scalar> p;
  p.reserve(prefix_.size());
  for (const auto& s : prefix_) p.push_back(s.to_mode(m));
  return TailedSeq(base_, std::move(p), tail_.to_mode(m));
}

bool TailedSeq::nonvanishing() const {
  return std::none_of(prefix_.begin(), prefix_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool TailedSeq::positive() const {
  if (mode() == ScalarMode::ExactComplex) return false;
  if (!std::all_of(prefix_.begin(), prefix_.end(), [](const Scalar& s) { return s.is_positive_real(); })) {
    return false;
  }
  return tail_.coef().is_positive_real() && tail_.ratio().is_positive_real();
}

bool TailedSeq::equals(const TailedSeq& other) const {
  if (mode() != other.mode() || base_ != other.base_) return false;
  auto [a, b] = aligned(*this, other);
  for (size_t i = 0; i < a.prefix_.size(); ++i) {
    if (!(a.prefix_[i] == b.prefix_[i])) return false;
  }
  return a.tail_.coef() == b.tail_.coef() && a.tail_.ratio() == b.tail_.ratio();
}

std::pair<TailedSeq, TailedSeq> aligned(const TailedSeq& a, const TailedSeq& b) {
  require(a.base() == b.base(), ErrorCode::InvalidArgument,
          "sequences have different bases (" + std::to_string(a.base()) + " vs " + std::to_string(b.base()) + ")");
  if (a.mode() != b.mode()) {
    fail(ErrorCode::ModeMismatch, "sequence mode mismatch: " + std::string(mode_name(a.mode())) + " vs " +
                                      std::string(mode_name(b.mode())));
  }
  Index start = std::max(a.tail_start(), b.tail_start());
  return {a.extended_to(start), b.extended_to(start)};
}

}  // namespace polact
