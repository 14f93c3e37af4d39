#include "shiftcg/delay_monoid.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "shiftcg/error.hpp"

namespace shiftcg {

namespace {

bool lex_leq(Count ca, ExtTime ta, Count cb, ExtTime tb) {
  return std::tie(ca, ta) <= std::tie(cb, tb);
}

void check_dims(const Resource& a, const Resource& b, const char* op) {
  if (a.per_scenario.size() != b.per_scenario.size())
    throw InvalidInput(std::string(op) + ": scenario counts differ (" +
                       std::to_string(a.per_scenario.size()) + " vs " +
                       std::to_string(b.per_scenario.size()) + ")");
}

void put_time(std::ostream& os, ExtTime t) {
  if (t == kMinusInfinity)
    os << "-inf";
  else
    os << t;
}

}  // namespace

bool in_s(const SElement& q) {
  if (!q.is_triple()) return true;
  if (q.do_c < 0 || q.dt_c < 0) return false;
  if (q.do_t < q.dt_t) return q.do_c == q.dt_c;
  if (q.do_t > q.dt_t) return q.do_c == q.dt_c - 1;
  return q.do_c == q.dt_c || q.do_c == q.dt_c - 1;
}

SElement s_plus(const SElement& a, const SElement& b) {
  if (a.is_neutral()) return b;
  if (b.is_neutral()) return a;
  if (a.is_top() || b.is_top()) return SElement::top();
  SElement r = a;
  if (a.do_t <= b.bg) {
    r.do_c = a.do_c + b.do_c;
    r.do_t = b.do_t;
  } else {
    r.do_c = a.do_c + b.dt_c;
    r.do_t = b.dt_t;
  }
  if (a.dt_t <= b.bg) {
    r.dt_c = a.dt_c + b.do_c;
    r.dt_t = b.do_t;
  } else {
    r.dt_c = a.dt_c + b.dt_c;
    r.dt_t = b.dt_t;
  }
  return r;
}

bool s_leq(const SElement& a, const SElement& b) {
  if (a.is_neutral() || b.is_top()) return true;
  if (b.is_neutral() || a.is_top()) return false;
  return a.bg >= b.bg && lex_leq(a.do_c, a.do_t, b.do_c, b.do_t) &&
         lex_leq(a.dt_c, a.dt_t, b.dt_c, b.dt_t);
}

SElement s_meet(const SElement& a, const SElement& b) {
  if (a.is_neutral() || b.is_neutral()) return SElement::neutral();
  if (a.is_top()) return b;
  if (b.is_top()) return a;
  SElement r = a;
  r.bg = std::max(a.bg, b.bg);
  if (!lex_leq(a.do_c, a.do_t, b.do_c, b.do_t)) {
    r.do_c = b.do_c;
    r.do_t = b.do_t;
  }
  if (!lex_leq(a.dt_c, a.dt_t, b.dt_c, b.dt_t)) {
    r.dt_c = b.dt_c;
    r.dt_t = b.dt_t;
  }
  return r;
}

double s_cost(const SElement& q) {
  switch (q.kind) {
    case SElement::Kind::neutral: return 0.0;
    case SElement::Kind::top: return std::numeric_limits<double>::infinity();
    case SElement::Kind::triple: break;
  }
  return static_cast<double>(q.do_c);
}

std::string to_string(const SElement& q) {
  if (q.is_neutral()) return "e";
  if (q.is_top()) return "inf";
  std::ostringstream os;
  os << "{bg=";
  put_time(os, q.bg);
  os << ", do=(" << q.do_c << ',';
  put_time(os, q.do_t);
  os << "), dt=(" << q.dt_c << ',';
  put_time(os, q.dt_t);
  os << ")}";
  return os.str();
}

Resource identity_resource(std::size_t scenarios) {
  return Resource{std::vector<SElement>(scenarios, SElement::neutral()), 0.0};
}

Resource resource_plus(const Resource& a, const Resource& b) {
  check_dims(a, b, "resource_plus");
  Resource r;
  r.per_scenario.reserve(a.per_scenario.size());
  for (std::size_t w = 0; w < a.per_scenario.size(); ++w)
    r.per_scenario.push_back(s_plus(a.per_scenario[w], b.per_scenario[w]));
  r.lambda = a.lambda + b.lambda;
  return r;
}

bool resource_leq(const Resource& a, const Resource& b) {
  check_dims(a, b, "resource_leq");
  if (!(a.lambda <= b.lambda)) return false;
  for (std::size_t w = 0; w < a.per_scenario.size(); ++w) {
    if (!s_leq(a.per_scenario[w], b.per_scenario[w])) return false;
  }
  return true;
}

Resource resource_meet(const Resource& a, const Resource& b) {
  check_dims(a, b, "resource_meet");
  Resource r;
  r.per_scenario.reserve(a.per_scenario.size());
  for (std::size_t w = 0; w < a.per_scenario.size(); ++w)
    r.per_scenario.push_back(s_meet(a.per_scenario[w], b.per_scenario[w]));
  r.lambda = std::min(a.lambda, b.lambda);
  return r;
}

double resource_cost(const Resource& r, double cbu) {
  if (r.per_scenario.empty()) return r.lambda;
  double total = 0.0;
  for (const SElement& q : r.per_scenario) {
    if (q.is_top()) return std::numeric_limits<double>::infinity();
    total += s_cost(q);
  }
  return cbu * total / static_cast<double>(r.per_scenario.size()) + r.lambda;
}

}  // namespace shiftcg
