#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polact/scalar.hpp"

namespace polact {

using Index = std::size_t;

enum class TailKind {
  Constant,             // ratio == 1
  Geometric,            // |ratio| < 1, absolutely summable
  ReciprocalGeometric,  // |ratio| > 1, the entrywise inverse of a geometric tail
  Unimodular,           // |ratio| == 1, ratio != 1
};

std::string_view tail_kind_name(TailKind k);

// Analytic tail: entry(n) = coef * ratio^(n - start) for n >= start.
//
// The four kinds share one representation, which keeps the class closed under
// entrywise products and inverses. Only Geometric tails are summable.
class TailModel {
 public:
  static TailModel constant(Scalar c, Index start);
  static TailModel geometric(Scalar a, Scalar r, Index start);
  // entries 1 / (a * r^(n - start)) for a geometric (a, r)
  static TailModel reciprocal_geometric(const Scalar& a, const Scalar& r, Index start);
  static TailModel power(Scalar coef, Scalar ratio, Index start);

  const Scalar& coef() const { return coef_; }
  const Scalar& ratio() const { return ratio_; }
  Index start() const { return start_; }
  ScalarMode mode() const { return coef_.mode(); }

  TailKind kind() const;
  bool summable() const { return kind() == TailKind::Geometric; }

  Scalar at(Index n) const;
  // Same entries, first tail index moved forward to new_start >= start.
  TailModel advanced_to(Index new_start) const;
  // Same coefficient and ratio, relabelled to begin at new_start.
  TailModel relabelled(Index new_start) const { return TailModel(coef_, ratio_, new_start); }
  TailModel to_mode(ScalarMode m) const;

  TailModel mul(const TailModel& other) const;  // starts must agree
  TailModel inv() const;

 private:
  TailModel(Scalar coef, Scalar ratio, Index start);

  Scalar coef_;
  Scalar ratio_;
  Index start_;
};

// Finitely described infinite sequence: an explicit prefix starting at `base`
// followed by an analytic tail starting at base + prefix.size().
class TailedSeq {
 public:
  TailedSeq(Index base, std::vector<Scalar> prefix, TailModel tail);

  // Tail-only constructors for the common shapes.
  static TailedSeq constant(Index base, std::vector<Scalar> prefix, const Scalar& c);
  static TailedSeq geometric(Index base, std::vector<Scalar> prefix, const Scalar& a, const Scalar& r);

  Index base() const { return base_; }
  const std::vector<Scalar>& prefix() const { return prefix_; }
  const TailModel& tail() const { return tail_; }
  Index tail_start() const { return tail_.start(); }
  ScalarMode mode() const { return tail_.mode(); }

  Scalar entry(Index n) const;

  // Same sequence with prefix materialized up to (not including) index `start`.
  TailedSeq extended_to(Index start) const;
  // Same sequence with trailing prefix entries folded into the tail where possible.
  TailedSeq trimmed() const;
  TailedSeq to_mode(ScalarMode m) const;

  bool nonvanishing() const;
  bool positive() const;
  bool summable() const { return tail_.summable(); }

  // Exact entrywise equality; Float compares within tolerance.
  bool equals(const TailedSeq& other) const;
  friend bool operator==(const TailedSeq& a, const TailedSeq& b) { return a.equals(b); }

 private:
  Index base_;
  std::vector<Scalar> prefix_;
  TailModel tail_;
};

// Both sequences re-expressed with a common base check and a common tail start.
std::pair<TailedSeq, TailedSeq> aligned(const TailedSeq& a, const TailedSeq& b);

}  // namespace polact
