#include "polact/serialize.hpp"

#include "polact/error.hpp"

namespace polact {

Json to_json(const TailedSeq& x) {
  Json j;
  j["base"] = x.base();
  j["mode"] = std::string(mode_name(x.mode()));
  Json prefix = Json::array();
  for (const auto& s : x.prefix()) prefix.push_back(s.to_string());
  j["prefix"] = prefix;

  const TailModel& t = x.tail();
  Json tail;
  TailKind kind = t.kind();
  // Float reciprocals do not round-trip through 1/x, so keep the raw form.
  if (kind == TailKind::ReciprocalGeometric && x.mode() == ScalarMode::Float) kind = TailKind::Unimodular;
  switch (kind) {
    case TailKind::Constant:
      tail["kind"] = "const";
      tail["c"] = t.coef().to_string();
      break;
    case TailKind::Geometric:
      tail["kind"] = "geom";
      tail["a"] = t.coef().to_string();
      tail["r"] = t.ratio().to_string();
      break;
    case TailKind::ReciprocalGeometric:
      tail["kind"] = "rgeom";
      tail["a"] = t.coef().inverse().to_string();
      tail["r"] = t.ratio().inverse().to_string();
      break;
    case TailKind::Unimodular:
      tail["kind"] = "power";
      tail["c"] = t.coef().to_string();
      tail["q"] = t.ratio().to_string();
      break;
  }
  j["tail"] = tail;
  if (x.mode() == ScalarMode::Float) j["tol"] = t.coef().float_tolerance();
  return j;
}

TailedSeq seq_from_json(const Json& j) {
  try {
    Index base = j.at("base").get<Index>();
    ScalarMode mode = parse_mode(j.at("mode").get<std::string>());
    double tol = j.contains("tol") ? j.at("tol").get<double>() : kDefaultFloatTolerance;
    auto scalar = [&](const Json& v) {
      Scalar s = Scalar::parse(v.get<std::string>(), mode);
      if (mode == ScalarMode::Float) s = Scalar::floating(s.float_value(), tol);
      return s;
    };
    std::vector<Scalar> prefix;
    for (const auto& e : j.at("prefix")) prefix.push_back(scalar(e));
    Index start = base + prefix.size();
    const Json& tail = j.at("tail");
    std::string kind = tail.at("kind").get<std::string>();
    if (kind == "const") {
      return TailedSeq(base, std::move(prefix), TailModel::constant(scalar(tail.at("c")), start));
    }
    if (kind == "geom") {
      return TailedSeq(base, std::move(prefix), TailModel::geometric(scalar(tail.at("a")), scalar(tail.at("r")), start));
    }
    if (kind == "rgeom") {
      return TailedSeq(base, std::move(prefix),
                       TailModel::reciprocal_geometric(scalar(tail.at("a")), scalar(tail.at("r")), start));
    }
    if (kind == "power") {
      return TailedSeq(base, std::move(prefix), TailModel::power(scalar(tail.at("c")), scalar(tail.at("q")), start));
    }
    fail(ErrorCode::Parse, "unknown tail kind '" + kind + "'");
  } catch (const Json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed sequence record: ") + e.what());
  }
}

std::string serialize(const TailedSeq& x) { return to_json(x).dump(); }

TailedSeq parse_seq(std::string_view text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::Parse, "sequence record is not valid JSON");
  return seq_from_json(j);
}

Json to_json(const Enclosure& e) {
  if (e.is_exact()) return exact_json(e.lo);
  Json j;
  j["lo"] = to_string(e.lo);
  j["hi"] = to_string(e.hi);
  j["lo_decimal"] = to_decimal(e.lo);
  j["hi_decimal"] = to_decimal(e.hi);
  return j;
}

Json exact_json(const Rational& q) {
  Json j;
  j["fraction"] = to_string(q);
  j["decimal"] = to_decimal(q);
  return j;
}

}  // namespace polact
