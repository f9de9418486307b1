#include "rdl/penalties.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rdl {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_domain(double u, const char* op) {
  if (!std::isfinite(u)) throw std::domain_error(std::string(op) + ": non-finite argument");
}

std::string fmt(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

ConcavePenalty ConcavePenalty::identity() {
  return ConcavePenalty(PenaltyKind::identity, 0.0, 0.0);
}

ConcavePenalty ConcavePenalty::lq(double q) {
  require(std::isfinite(q) && q > 0.0 && q <= 1.0, "lq penalty requires 0 < q <= 1");
  return ConcavePenalty(PenaltyKind::lq, q, 0.0);
}

ConcavePenalty ConcavePenalty::log(double eps) {
  require(std::isfinite(eps) && eps > 0.0, "log penalty requires eps > 0");
  return ConcavePenalty(PenaltyKind::log, eps, 0.0);
}

ConcavePenalty ConcavePenalty::capped_l1(double eps) {
  require(std::isfinite(eps) && eps > 0.0, "capped_l1 penalty requires eps > 0");
  return ConcavePenalty(PenaltyKind::capped_l1, eps, 0.0);
}

ConcavePenalty ConcavePenalty::scad(double lambda, double a) {
  require(std::isfinite(lambda) && lambda > 0.0, "scad penalty requires lambda > 0");
  require(std::isfinite(a) && a > 2.0, "scad penalty requires a > 2");
  return ConcavePenalty(PenaltyKind::scad, lambda, a);
}

ConcavePenalty ConcavePenalty::mcp(double lambda, double gamma) {
  require(std::isfinite(lambda) && lambda > 0.0, "mcp penalty requires lambda > 0");
  require(std::isfinite(gamma) && gamma > 1.0, "mcp penalty requires gamma > 1");
  return ConcavePenalty(PenaltyKind::mcp, lambda, gamma);
}

double ConcavePenalty::value(double u) const {
  check_domain(u, "penalty value");
  if (u < 0.0) throw std::domain_error("penalty value: negative argument");
  switch (kind_) {
    case PenaltyKind::identity:
      return u;
    case PenaltyKind::lq:
      return std::pow(u, p1_);
    case PenaltyKind::log:
      return std::log(p1_ + u);
    case PenaltyKind::capped_l1:
      return std::min(u, p1_);
    case PenaltyKind::scad: {
      const double lam = p1_, a = p2_;
      if (u <= lam) return lam * u;
      if (u <= a * lam) return (2.0 * a * lam * u - u * u - lam * lam) / (2.0 * (a - 1.0));
      return lam * lam * (a + 1.0) / 2.0;
    }
    case PenaltyKind::mcp: {
      const double lam = p1_, gamma = p2_;
      if (u <= gamma * lam) return lam * u - u * u / (2.0 * gamma);
      return gamma * lam * lam / 2.0;
    }
  }
  return 0.0;
}

double ConcavePenalty::supergradient(double u) const {
  check_domain(u, "penalty supergradient");
  if (u <= 0.0) throw std::domain_error("penalty supergradient: argument must be > 0");
  switch (kind_) {
    case PenaltyKind::identity:
      return 1.0;
    case PenaltyKind::lq:
      return p1_ == 1.0 ? 1.0 : p1_ * std::pow(u, p1_ - 1.0);
    case PenaltyKind::log:
      return 1.0 / (p1_ + u);
    case PenaltyKind::capped_l1:
      return u < p1_ ? 1.0 : 0.0;
    case PenaltyKind::scad: {
      const double lam = p1_, a = p2_;
      if (u <= lam) return lam;
      if (u <= a * lam) return (a * lam - u) / (a - 1.0);
      return 0.0;
    }
    case PenaltyKind::mcp: {
      const double lam = p1_, gamma = p2_;
      return u < gamma * lam ? lam - u / gamma : 0.0;
    }
  }
  return 0.0;
}

double ConcavePenalty::loss(double v) const {
  check_domain(v, "penalty loss");
  if (v < 0.0) throw std::domain_error("penalty loss: negative squared residual");
  return value(std::sqrt(v));
}

double ConcavePenalty::weight(double r, double r_floor, double w_max) const {
  check_domain(r, "penalty weight");
  const double rg = std::max(r, r_floor);
  const double w = supergradient(rg) / (2.0 * rg);
  return std::min(w, w_max);
}

std::string ConcavePenalty::to_string() const {
  switch (kind_) {
    case PenaltyKind::identity:
      return "identity";
    case PenaltyKind::lq:
      return "lq:q=" + fmt(p1_);
    case PenaltyKind::log:
      return "log:eps=" + fmt(p1_);
    case PenaltyKind::capped_l1:
      return "capped:eps=" + fmt(p1_);
    case PenaltyKind::scad:
      return "scad:lambda=" + fmt(p1_) + ",a=" + fmt(p2_);
    case PenaltyKind::mcp:
      return "mcp:lambda=" + fmt(p1_) + ",gamma=" + fmt(p2_);
  }
  return "identity";
}

namespace {

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("penalty spec: bad value for '" + std::string(what) + "'");
  return v;
}

// key=value pairs after the family name, comma separated
std::vector<std::pair<std::string_view, std::string_view>> parse_kv(std::string_view s) {
  std::vector<std::pair<std::string_view, std::string_view>> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    std::string_view item = s.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size())
      throw std::invalid_argument("penalty spec: expected key=value, got '" + std::string(item) + "'");
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    s = comma == std::string_view::npos ? std::string_view{} : s.substr(comma + 1);
  }
  return out;
}

double named(const std::vector<std::pair<std::string_view, std::string_view>>& kv,
             std::string_view key) {
  for (const auto& [k, v] : kv)
    if (k == key) return parse_double(v, key);
  throw std::invalid_argument("penalty spec: missing parameter '" + std::string(key) + "'");
}

}  // namespace

ConcavePenalty parse_penalty(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view rest =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const auto kv = parse_kv(rest);

  if (name == "identity") {
    if (!kv.empty()) throw std::invalid_argument("penalty spec: identity takes no parameters");
    return ConcavePenalty::identity();
  }
  if (name == "lq") return ConcavePenalty::lq(named(kv, "q"));
  if (name == "log") return ConcavePenalty::log(named(kv, "eps"));
  if (name == "capped") return ConcavePenalty::capped_l1(named(kv, "eps"));
  if (name == "scad") return ConcavePenalty::scad(named(kv, "lambda"), named(kv, "a"));
  if (name == "mcp") return ConcavePenalty::mcp(named(kv, "lambda"), named(kv, "gamma"));
  throw std::invalid_argument("penalty spec: unknown family '" + std::string(name) +
                              "' (expected identity, lq, log, capped, scad, mcp)");
}

}  // namespace rdl
