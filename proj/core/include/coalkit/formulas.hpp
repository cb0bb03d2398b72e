#ifndef COALKIT_FORMULAS_HPP
#define COALKIT_FORMULAS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coalkit {

/// 3CNF formula over variables 1..num_vars; literals are signed variable
/// ids. At most three literals per clause, no literal repeated in a clause.
class Cnf3 {
 public:
  Cnf3(int num_vars, std::vector<std::vector<int>> clauses);  // throws MalformedCnf

  int num_vars() const { return num_vars_; }
  const std::vector<std::vector<int>>& clauses() const { return clauses_; }
  /// Whether some clause has two or more literals (the kernel gadget
  /// requires one, mirroring its w.l.o.g. assumption).
  bool has_multiliteral_clause() const;

  /// Bit k-1 of the mask is the truth value of variable k.
  bool satisfied_by(std::uint32_t assignment) const;

 private:
  int num_vars_;
  std::vector<std::vector<int>> clauses_;
};

/// forall-exists prefixed 3CNF: variables 1..num_universals are universal,
/// the following num_existentials are existential.
class Qbf2 {
 public:
  Qbf2(int num_universals, int num_existentials,
       std::vector<std::vector<int>> clauses);  // throws MalformedQbf

  int num_universals() const { return num_universals_; }
  int num_existentials() const { return num_existentials_; }
  const std::vector<std::vector<int>>& clauses() const { return clauses_; }

  bool satisfied_by(std::uint32_t alpha, std::uint32_t beta) const;

 private:
  int num_universals_;
  int num_existentials_;
  std::vector<std::vector<int>> clauses_;
};

/// Restricted 2QBF in which every universal alpha_k occurs exactly in the
/// two clauses (alpha_k or not beta_k) and (not alpha_k or beta_k), beta_k
/// being the k-th existential -- the twin that carries alpha_k's truth
/// value into the rest of the matrix.
class Nqbf2Forall {
 public:
  explicit Nqbf2Forall(Qbf2 qbf);  // throws MalformedQbf when the pattern fails

  const Qbf2& qbf() const { return qbf_; }

 private:
  Qbf2 qbf_;
};

/// The satisfying assignment maximizing sum of 2^i over true variables
/// (variable num_vars most significant), found by enumerating assignment
/// masks downward from all-true; nullopt when unsatisfiable. num_vars <= 20.
std::optional<std::vector<bool>> sat_lexmax(const Cnf3& phi);

/// Brute-force validity of a forall-exists formula; total variables <= 20.
bool qbf_valid(const Qbf2& phi);
bool qbf_valid(const Nqbf2Forall& phi);

/// Puts an arbitrary forall-exists 3CNF into the restricted form: each
/// universal gets a fresh twin existential substituted for it throughout
/// the matrix, plus the two enforcement clauses (emitted first). Inputs
/// already in the restricted form pass through unchanged.
Nqbf2Forall normalize_qbf(const Qbf2& phi);

/// DIMACS reader: "p cnf" header, 0-terminated clauses, 'c' comments.
Cnf3 parse_dimacs(const std::string& text);

/// QDIMACS reader restricted to an a-block followed by an e-block.
Qbf2 parse_qdimacs(const std::string& text);

}  // namespace coalkit

#endif  // COALKIT_FORMULAS_HPP
