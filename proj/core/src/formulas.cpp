#include "coalkit/formulas.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "coalkit/errors.hpp"

namespace coalkit {

namespace {

void validate_clauses(int num_vars, const std::vector<std::vector<int>>& clauses,
                      bool as_cnf) {
  for (const auto& clause : clauses) {
    if (clause.size() > 3) {
      if (as_cnf) throw MalformedCnf("clause with more than three literals");
      throw MalformedQbf("clause with more than three literals");
    }
    for (std::size_t a = 0; a < clause.size(); ++a) {
      int lit = clause[a];
      int var = std::abs(lit);
      if (lit == 0 || var > num_vars) {
        if (as_cnf) throw MalformedCnf("literal out of range");
        throw MalformedQbf("literal out of range");
      }
      for (std::size_t b = a + 1; b < clause.size(); ++b)
        if (clause[b] == lit) {
          if (as_cnf) throw MalformedCnf("duplicate literal in a clause");
          throw MalformedQbf("duplicate literal in a clause");
        }
    }
  }
}

bool clause_satisfied(const std::vector<int>& clause, auto truth_of) {
  for (int lit : clause) {
    bool t = truth_of(std::abs(lit));
    if (lit > 0 ? t : !t) return true;
  }
  return false;
}

}  // namespace

Cnf3::Cnf3(int num_vars, std::vector<std::vector<int>> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  if (num_vars_ < 1) throw MalformedCnf("a formula needs at least one variable");
  validate_clauses(num_vars_, clauses_, /*as_cnf=*/true);
}

bool Cnf3::has_multiliteral_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const auto& c) { return c.size() >= 2; });
}

bool Cnf3::satisfied_by(std::uint32_t assignment) const {
  for (const auto& clause : clauses_)
    if (!clause_satisfied(clause, [&](int var) { return (assignment >> (var - 1)) & 1; }))
      return false;
  return true;
}

Qbf2::Qbf2(int num_universals, int num_existentials, std::vector<std::vector<int>> clauses)
    : num_universals_(num_universals),
      num_existentials_(num_existentials),
      clauses_(std::move(clauses)) {
  if (num_universals_ < 0 || num_existentials_ < 0 ||
      num_universals_ + num_existentials_ < 1)
    throw MalformedQbf("a formula needs at least one variable");
  validate_clauses(num_universals_ + num_existentials_, clauses_, /*as_cnf=*/false);
}

bool Qbf2::satisfied_by(std::uint32_t alpha, std::uint32_t beta) const {
  auto truth = [&](int var) {
    return var <= num_universals_ ? (alpha >> (var - 1)) & 1
                                  : (beta >> (var - num_universals_ - 1)) & 1;
  };
  for (const auto& clause : clauses_)
    if (!clause_satisfied(clause, truth)) return false;
  return true;
}

namespace {

bool matches_restricted_pattern(const Qbf2& q) {
  int n = q.num_universals();
  if (n < 1 || q.num_existentials() < n) return false;
  // occurrences of each universal: exactly one positive in (a_k or not b_k)
  // and one negative in (not a_k or b_k), b_k the k-th existential
  for (int k = 1; k <= n; ++k) {
    int twin = n + k;
    int pos_at = -1, neg_at = -1;
    for (std::size_t j = 0; j < q.clauses().size(); ++j) {
      for (int lit : q.clauses()[j]) {
        if (lit == k) {
          if (pos_at >= 0) return false;
          pos_at = static_cast<int>(j);
        } else if (lit == -k) {
          if (neg_at >= 0) return false;
          neg_at = static_cast<int>(j);
        }
      }
    }
    if (pos_at < 0 || neg_at < 0 || pos_at == neg_at) return false;
    auto is_pair = [&](const std::vector<int>& clause, int a, int b) {
      return clause.size() == 2 &&
             ((clause[0] == a && clause[1] == b) || (clause[0] == b && clause[1] == a));
    };
    if (!is_pair(q.clauses()[pos_at], k, -twin)) return false;
    if (!is_pair(q.clauses()[neg_at], -k, twin)) return false;
  }
  return true;
}

}  // namespace

Nqbf2Forall::Nqbf2Forall(Qbf2 qbf) : qbf_(std::move(qbf)) {
  if (!matches_restricted_pattern(qbf_))
    throw MalformedQbf(
        "not in restricted form: every universal must occur exactly in its "
        "two twin clauses (use normalization)");
}

std::optional<std::vector<bool>> sat_lexmax(const Cnf3& phi) {
  int n = phi.num_vars();
  if (n > 20) throw MalformedCnf("lex-max enumeration is limited to 20 variables");
  for (std::uint64_t mask = (std::uint64_t{1} << n); mask-- > 0;) {
    if (phi.satisfied_by(static_cast<std::uint32_t>(mask))) {
      std::vector<bool> out(n);
      for (int k = 0; k < n; ++k) out[k] = (mask >> k) & 1;
      return out;
    }
  }
  return std::nullopt;
}

bool qbf_valid(const Qbf2& phi) {
  int n = phi.num_universals(), r = phi.num_existentials();
  if (n + r > 20) throw MalformedQbf("validity enumeration is limited to 20 variables");
  for (std::uint32_t alpha = 0; alpha < (std::uint32_t{1} << n); ++alpha) {
    bool found = false;
    for (std::uint32_t beta = 0; beta < (std::uint32_t{1} << r) && !found; ++beta)
      found = phi.satisfied_by(alpha, beta);
    if (!found) return false;
  }
  return true;
}

bool qbf_valid(const Nqbf2Forall& phi) { return qbf_valid(phi.qbf()); }

Nqbf2Forall normalize_qbf(const Qbf2& phi) {
  if (matches_restricted_pattern(phi)) return Nqbf2Forall(phi);
  int n = phi.num_universals();
  int r = phi.num_existentials();
  // twins take existential slots 1..n; the original existentials shift up
  std::vector<std::vector<int>> clauses;
  for (int k = 1; k <= n; ++k) {
    clauses.push_back({k, -(n + k)});
    clauses.push_back({-k, n + k});
  }
  for (auto clause : phi.clauses()) {
    for (int& lit : clause) {
      // universal k maps to its twin n+k; existential n+t shifts to 2n+t
      int mapped = std::abs(lit) + n;
      lit = lit > 0 ? mapped : -mapped;
    }
    clauses.push_back(std::move(clause));
  }
  return Nqbf2Forall(Qbf2(n, n + r, std::move(clauses)));
}

namespace {

struct TokenStream {
  std::istringstream in;
  int line = 1;
  explicit TokenStream(const std::string& text) : in(text) {}

  std::optional<std::string> next() {
    for (;;) {
      int c = in.peek();
      if (c == EOF) return std::nullopt;
      if (c == '\n') {
        ++line;
        in.get();
        continue;
      }
      if (std::isspace(c)) {
        in.get();
        continue;
      }
      break;
    }
    std::string tok;
    in >> tok;
    return tok;
  }
};

[[noreturn]] void cnf_fail(int line, const std::string& what) {
  throw MalformedCnf("line " + std::to_string(line) + ": " + what);
}

int parse_int(const std::string& tok, int line, bool as_cnf) {
  char* end = nullptr;
  long v = std::strtol(tok.c_str(), &end, 10);
  if (!end || *end != '\0') {
    if (as_cnf) cnf_fail(line, "expected an integer, got '" + tok + "'");
    throw MalformedQbf("line " + std::to_string(line) + ": expected an integer, got '" + tok + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

Cnf3 parse_dimacs(const std::string& text) {
  TokenStream ts(text);
  int num_vars = -1, num_clauses = -1;
  for (;;) {
    auto tok = ts.next();
    if (!tok) cnf_fail(ts.line, "missing 'p cnf' header");
    if (tok->rfind("c", 0) == 0 && *tok == "c") {
      std::string rest;
      std::getline(ts.in, rest);
      ++ts.line;
      continue;
    }
    if (*tok == "p") {
      auto fmt = ts.next();
      if (!fmt || *fmt != "cnf") cnf_fail(ts.line, "header must be 'p cnf <vars> <clauses>'");
      auto nv = ts.next(), nc = ts.next();
      if (!nv || !nc) cnf_fail(ts.line, "truncated header");
      num_vars = parse_int(*nv, ts.line, true);
      num_clauses = parse_int(*nc, ts.line, true);
      if (num_vars < 1 || num_clauses < 0) cnf_fail(ts.line, "bad header counts");
      break;
    }
    cnf_fail(ts.line, "unexpected token '" + *tok + "' before the header");
  }
  std::vector<std::vector<int>> clauses;
  std::vector<int> current;
  for (;;) {
    auto tok = ts.next();
    if (!tok || *tok == "%") break;
    if (*tok == "c") {
      std::string rest;
      std::getline(ts.in, rest);
      ++ts.line;
      continue;
    }
    int lit = parse_int(*tok, ts.line, true);
    if (lit == 0) {
      clauses.push_back(current);
      current.clear();
    } else {
      current.push_back(lit);
    }
  }
  if (!current.empty()) cnf_fail(ts.line, "last clause is not 0-terminated");
  if (static_cast<int>(clauses.size()) != num_clauses)
    cnf_fail(ts.line, "header announces " + std::to_string(num_clauses) + " clauses, found " +
                          std::to_string(clauses.size()));
  return Cnf3(num_vars, std::move(clauses));
}

Qbf2 parse_qdimacs(const std::string& text) {
  TokenStream ts(text);
  int num_vars = -1, num_clauses = -1;
  for (;;) {
    auto tok = ts.next();
    if (!tok) throw MalformedQbf("missing 'p cnf' header");
    if (*tok == "c") {
      std::string rest;
      std::getline(ts.in, rest);
      ++ts.line;
      continue;
    }
    if (*tok == "p") {
      auto fmt = ts.next();
      if (!fmt || *fmt != "cnf") throw MalformedQbf("header must be 'p cnf <vars> <clauses>'");
      auto nv = ts.next(), nc = ts.next();
      if (!nv || !nc) throw MalformedQbf("truncated header");
      num_vars = parse_int(*nv, ts.line, false);
      num_clauses = parse_int(*nc, ts.line, false);
      if (num_vars < 1 || num_clauses < 0) throw MalformedQbf("bad header counts");
      break;
    }
    throw MalformedQbf("unexpected token '" + *tok + "' before the header");
  }

  // quantifier prefix: a-lines then e-lines, nothing else
  std::vector<int> universals, existentials;
  bool saw_exists = false;
  std::optional<std::string> pending;
  for (;;) {
    auto tok = ts.next();
    if (!tok) throw MalformedQbf("no clauses after the prefix");
    if (*tok == "a" || *tok == "e") {
      bool exists = (*tok == "e");
      if (!exists && saw_exists)
        throw Not2QBF("prefix must be one forall block followed by one exists block");
      if (exists) saw_exists = true;
      for (;;) {
        auto v = ts.next();
        if (!v) throw MalformedQbf("unterminated quantifier line");
        int var = parse_int(*v, ts.line, false);
        if (var == 0) break;
        if (var < 0 || var > num_vars) throw MalformedQbf("quantified variable out of range");
        (exists ? existentials : universals).push_back(var);
      }
      continue;
    }
    pending = tok;
    break;
  }
  if (universals.empty()) throw Not2QBF("the forall block is empty");

  std::vector<int> remap(num_vars + 1, 0);
  int id = 0;
  for (int v : universals) {
    if (remap[v]) throw MalformedQbf("variable quantified twice");
    remap[v] = ++id;
  }
  for (int v : existentials) {
    if (remap[v]) throw MalformedQbf("variable quantified twice");
    remap[v] = ++id;
  }
  for (int v = 1; v <= num_vars; ++v)
    if (!remap[v]) throw MalformedQbf("variable " + std::to_string(v) + " is not quantified");

  std::vector<std::vector<int>> clauses;
  std::vector<int> current;
  auto handle = [&](int lit) {
    if (lit == 0) {
      clauses.push_back(current);
      current.clear();
    } else {
      int var = std::abs(lit);
      if (var > num_vars) throw MalformedQbf("literal out of range");
      current.push_back(lit > 0 ? remap[var] : -remap[var]);
    }
  };
  if (pending) handle(parse_int(*pending, ts.line, false));
  for (;;) {
    auto tok = ts.next();
    if (!tok || *tok == "%") break;
    if (*tok == "c") {
      std::string rest;
      std::getline(ts.in, rest);
      ++ts.line;
      continue;
    }
    handle(parse_int(*tok, ts.line, false));
  }
  if (!current.empty()) throw MalformedQbf("last clause is not 0-terminated");
  if (static_cast<int>(clauses.size()) != num_clauses)
    throw MalformedQbf("header announces " + std::to_string(num_clauses) + " clauses, found " +
                       std::to_string(clauses.size()));
  return Qbf2(static_cast<int>(universals.size()), static_cast<int>(existentials.size()),
              std::move(clauses));
}

}  // namespace coalkit
