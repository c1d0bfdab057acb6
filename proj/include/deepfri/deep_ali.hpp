#ifndef DEEPFRI_DEEP_ALI_HPP
#define DEEPFRI_DEEP_ALI_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "deepfri/channel.hpp"
#include "deepfri/deep_fri.hpp"
#include "deepfri/errors.hpp"
#include "deepfri/gf2n.hpp"
#include "deepfri/poly.hpp"

namespace deepfri {

// Constraint conditions are expression trees over variables v1..vm with
// field constants and {+, *, pow}. Char-2 fields make subtraction the same
// as addition, so the three operators cover the usual constraint algebra.
//
// Text form (the instance file grammar):  expr := (+ expr expr ...)
//   | (* expr expr ...) | (pow expr k) | vN | 0xHEX
class ConstraintExpr {
 public:
  static ConstraintExpr variable(size_t index_1based) {
    DFRI_REQUIRE(index_1based >= 1, ErrorCode::kBadArgument, "variables are 1-based");
    auto n = std::make_shared<Node>();
    n->kind = Kind::kVar;
    n->var = index_1based - 1;
    n->degree = 1;
    n->arity = index_1based;
    return ConstraintExpr(std::move(n));
  }
  static ConstraintExpr constant(const FieldElement& c) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::kConst;
    n->value = c;
    n->degree = 0;
    n->arity = 0;
    return ConstraintExpr(std::move(n));
  }
  static ConstraintExpr sum(std::vector<ConstraintExpr> terms) {
    return nary(Kind::kSum, std::move(terms));
  }
  static ConstraintExpr product(std::vector<ConstraintExpr> factors) {
    return nary(Kind::kProduct, std::move(factors));
  }
  static ConstraintExpr power(ConstraintExpr base, uint64_t k) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::kPow;
    n->exponent = k;
    n->degree = base.root_->degree * k;
    n->arity = base.root_->arity;
    n->children = {base.root_};
    return ConstraintExpr(std::move(n));
  }

  // Structural total degree: max over sums, sum over products, k-fold for
  // powers. An upper bound on the expanded degree (cancellations can only
  // lower it), which is the side the protocol's domain sizing needs.
  uint64_t total_degree() const { return root_->degree; }
  size_t arity() const { return root_->arity; }

  FieldElement eval(const Field& field, const std::vector<FieldElement>& vars) const {
    return eval_node(*root_, field, vars);
  }

  // Substitute univariate polynomials for the variables.
  Polynomial eval_poly(const Field& field, const std::vector<Polynomial>& vars) const {
    return eval_poly_node(*root_, field, vars);
  }

  std::string to_string() const { return print_node(*root_); }

  static ConstraintExpr parse(const std::string& text, const Field& field) {
    size_t pos = 0;
    ConstraintExpr e = parse_expr(text, &pos, field);
    skip_ws(text, &pos);
    DFRI_REQUIRE(pos == text.size(), ErrorCode::kBadArgument,
                 "trailing characters in constraint expression");
    return e;
  }

 private:
  enum class Kind { kVar, kConst, kSum, kProduct, kPow };
  struct Node {
    Kind kind;
    size_t var = 0;
    std::optional<FieldElement> value;
    uint64_t exponent = 0;
    uint64_t degree = 0;
    size_t arity = 0;
    std::vector<std::shared_ptr<const Node>> children;
  };

  explicit ConstraintExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  static ConstraintExpr nary(Kind kind, std::vector<ConstraintExpr> items) {
    DFRI_REQUIRE(!items.empty(), ErrorCode::kBadArgument, "empty operator");
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->degree = 0;
    n->arity = 0;
    for (auto& it : items) {
      n->arity = std::max(n->arity, it.root_->arity);
      if (kind == Kind::kSum) {
        n->degree = std::max(n->degree, it.root_->degree);
      } else {
        n->degree += it.root_->degree;
      }
      n->children.push_back(it.root_);
    }
    return ConstraintExpr(std::move(n));
  }

  static FieldElement eval_node(const Node& n, const Field& field,
                                const std::vector<FieldElement>& vars) {
    switch (n.kind) {
      case Kind::kVar:
        DFRI_REQUIRE(n.var < vars.size(), ErrorCode::kBadArgument,
                     "constraint mentions a variable beyond the mask");
        return vars[n.var];
      case Kind::kConst:
        return *n.value;
      case Kind::kSum: {
        FieldElement acc = eval_node(*n.children[0], field, vars);
        for (size_t i = 1; i < n.children.size(); ++i)
          acc += eval_node(*n.children[i], field, vars);
        return acc;
      }
      case Kind::kProduct: {
        FieldElement acc = eval_node(*n.children[0], field, vars);
        for (size_t i = 1; i < n.children.size(); ++i)
          acc *= eval_node(*n.children[i], field, vars);
        return acc;
      }
      case Kind::kPow:
        return eval_node(*n.children[0], field, vars).pow(n.exponent);
    }
    throw Error(ErrorCode::kBadArgument, "corrupt expression node");
  }

  static Polynomial eval_poly_node(const Node& n, const Field& field,
                                   const std::vector<Polynomial>& vars) {
    switch (n.kind) {
      case Kind::kVar:
        DFRI_REQUIRE(n.var < vars.size(), ErrorCode::kBadArgument,
                     "constraint mentions a variable beyond the mask");
        return vars[n.var];
      case Kind::kConst:
        return Polynomial(field, {*n.value});
      case Kind::kSum: {
        Polynomial acc = eval_poly_node(*n.children[0], field, vars);
        for (size_t i = 1; i < n.children.size(); ++i)
          acc = acc + eval_poly_node(*n.children[i], field, vars);
        return acc;
      }
      case Kind::kProduct: {
        Polynomial acc = eval_poly_node(*n.children[0], field, vars);
        for (size_t i = 1; i < n.children.size(); ++i)
          acc = acc * eval_poly_node(*n.children[i], field, vars);
        return acc;
      }
      case Kind::kPow: {
        Polynomial base = eval_poly_node(*n.children[0], field, vars);
        Polynomial acc(field, {field.one()});
        for (uint64_t i = 0; i < n.exponent; ++i) acc = acc * base;
        return acc;
      }
    }
    throw Error(ErrorCode::kBadArgument, "corrupt expression node");
  }

  static std::string print_node(const Node& n) {
    switch (n.kind) {
      case Kind::kVar:
        return "v" + std::to_string(n.var + 1);
      case Kind::kConst:
        return "0x" + n.value->to_hex();
      case Kind::kSum:
      case Kind::kProduct: {
        std::string s = n.kind == Kind::kSum ? "(+" : "(*";
        for (const auto& c : n.children) s += " " + print_node(*c);
        return s + ")";
      }
      case Kind::kPow:
        return "(pow " + print_node(*n.children[0]) + " " + std::to_string(n.exponent) + ")";
    }
    return "?";
  }

  static void skip_ws(const std::string& t, size_t* pos) {
    while (*pos < t.size() && (t[*pos] == ' ' || t[*pos] == '\t' || t[*pos] == '\n')) ++*pos;
  }

  static std::string next_token(const std::string& t, size_t* pos) {
    skip_ws(t, pos);
    DFRI_REQUIRE(*pos < t.size(), ErrorCode::kBadArgument, "unexpected end of expression");
    size_t start = *pos;
    while (*pos < t.size() && t[*pos] != ' ' && t[*pos] != '\t' && t[*pos] != '\n' &&
           t[*pos] != '(' && t[*pos] != ')') {
      ++*pos;
    }
    DFRI_REQUIRE(*pos > start, ErrorCode::kBadArgument, "empty token in expression");
    return t.substr(start, *pos - start);
  }

  static ConstraintExpr parse_expr(const std::string& t, size_t* pos, const Field& field) {
    skip_ws(t, pos);
    DFRI_REQUIRE(*pos < t.size(), ErrorCode::kBadArgument, "unexpected end of expression");
    if (t[*pos] == '(') {
      ++*pos;
      std::string op = next_token(t, pos);
      std::vector<ConstraintExpr> args;
      if (op == "pow") {
        ConstraintExpr base = parse_expr(t, pos, field);
        std::string k = next_token(t, pos);
        skip_ws(t, pos);
        DFRI_REQUIRE(*pos < t.size() && t[*pos] == ')', ErrorCode::kBadArgument,
                     "expected ) after pow");
        ++*pos;
        return power(base, std::stoull(k));
      }
      DFRI_REQUIRE(op == "+" || op == "*", ErrorCode::kBadArgument,
                   "unknown operator '" + op + "'");
      for (;;) {
        skip_ws(t, pos);
        DFRI_REQUIRE(*pos < t.size(), ErrorCode::kBadArgument, "unbalanced parentheses");
        if (t[*pos] == ')') {
          ++*pos;
          break;
        }
        args.push_back(parse_expr(t, pos, field));
      }
      return op == "+" ? sum(std::move(args)) : product(std::move(args));
    }
    std::string tok = next_token(t, pos);
    if (tok[0] == 'v') {
      return variable(std::stoull(tok.substr(1)));
    }
    DFRI_REQUIRE(tok.size() > 2 && tok[0] == '0' && tok[1] == 'x', ErrorCode::kBadArgument,
                 "expected variable vN or 0x constant, got '" + tok + "'");
    return constant(FieldElement::from_hex(field, tok.substr(2)));
  }

  std::shared_ptr<const Node> root_;
};

// One constraint (M, P, Q): condition P over the mask-shifted witness values
// must vanish wherever the domain polynomial Q does.
struct AprConstraint {
  std::vector<FieldElement> mask;
  ConstraintExpr condition;
  Polynomial domain_poly;
};

struct AprInstance {
  Field field;
  uint64_t degree_bound;  // d: the witness must have degree < d
  std::vector<AprConstraint> constraints;

  // Union of all mask entries, deduplicated, in canonical order.
  std::vector<FieldElement> full_mask() const {
    std::set<uint32_t> bits;
    for (const auto& c : constraints)
      for (const auto& m : c.mask) bits.insert(m.bits());
    std::vector<FieldElement> out;
    for (uint32_t b : bits) out.push_back(field.element(b));
    return out;
  }

  uint64_t max_condition_degree() const {  // d_C
    uint64_t d = 0;
    for (const auto& c : constraints) d = std::max(d, c.condition.total_degree());
    return d;
  }

  Polynomial q_lcm() const {
    DFRI_REQUIRE(!constraints.empty(), ErrorCode::kBadArgument, "no constraints");
    Polynomial acc = constraints[0].domain_poly;
    acc = acc.scale(acc.coeffs().back().inv());
    for (size_t i = 1; i < constraints.size(); ++i) acc = poly_lcm(acc, constraints[i].domain_poly);
    return acc;
  }
};

struct AprWitness {
  Polynomial f_tilde;
};

struct BoundaryConstraint {
  uint64_t row, col;
  FieldElement value;
};

// Execution-trace constraint system over a multiplicative subgroup of order
// T*w: transition conditions read two adjacent rows through the mask
// {1, g, ..., g^(2w-1)}, boundary conditions pin single cells.
struct AirInstance {
  Field field;
  uint64_t trace_length;  // T
  uint64_t width;         // w
  std::vector<ConstraintExpr> transitions;  // over 2w variables
  std::vector<BoundaryConstraint> boundary;
  FieldElement gamma;     // generator of the order-T*w subgroup

  static AirInstance make(const Field& field, uint64_t trace_length, uint64_t width,
                          std::vector<ConstraintExpr> transitions,
                          std::vector<BoundaryConstraint> boundary) {
    FieldElement g = subgroup_generator(field, trace_length * width);
    for (const auto& tr : transitions) {
      DFRI_REQUIRE(tr.arity() <= 2 * width, ErrorCode::kBadArgument,
                   "transition reads beyond two rows");
    }
    for (const auto& b : boundary) {
      DFRI_REQUIRE(b.row < trace_length && b.col < width, ErrorCode::kBadArgument,
                   "boundary cell outside the trace");
    }
    return AirInstance{field, trace_length, width, std::move(transitions),
                       std::move(boundary), g};
  }
};

inline uint64_t bit_ceil_u64(uint64_t v) {
  uint64_t r = 1;
  while (r < v) r <<= 1;
  return r;
}

// AIR -> APR: interpolate the row-major trace over <gamma>, turn transitions
// into constraints with mask {1, gamma, ..., gamma^(2w-1)} and domain
// (x^T - 1)/(x - gamma^-w), and each boundary (i, j, a) into mask {1},
// condition v1 - a, domain x - gamma^(i*w+j). The witness degree bound is
// T*w rounded up to a power of two so the proximity-test domains exist.
inline std::pair<AprInstance, AprWitness> air_to_apr(
    const AirInstance& air, const std::vector<std::vector<FieldElement>>& trace) {
  const Field& field = air.field;
  uint64_t T = air.trace_length, w = air.width;
  DFRI_REQUIRE(trace.size() == T, ErrorCode::kTraceShapeMismatch, "trace row count");
  for (const auto& row : trace) {
    DFRI_REQUIRE(row.size() == w, ErrorCode::kTraceShapeMismatch, "trace row width");
  }

  std::vector<FieldElement> points, values;
  for (uint64_t t = 0; t < T; ++t) {
    for (uint64_t j = 0; j < w; ++j) {
      points.push_back(air.gamma.pow(t * w + j));
      values.push_back(trace[t][j]);
    }
  }
  Polynomial f_tilde = interpolate_points(field, points, values);

  AprInstance inst{field, bit_ceil_u64(T * w), {}};

  // (x^T - 1) / (x - gamma^-w); exact since gamma^-w is a T-th root of unity.
  Polynomial x_t_minus_1 =
      Polynomial::monomial(field, T, field.one()) + Polynomial(field, {field.one()});
  FieldElement gamma_minus_w = air.gamma.pow(T * w - w);
  auto [q_trans, rem] = x_t_minus_1.divrem(Polynomial(field, {gamma_minus_w, field.one()}));
  DFRI_REQUIRE(rem.is_zero(), ErrorCode::kBadArgument, "transition domain division not exact");

  std::vector<FieldElement> trans_mask;
  for (uint64_t j = 0; j < 2 * w; ++j) trans_mask.push_back(air.gamma.pow(j));
  for (const auto& tr : air.transitions) {
    inst.constraints.push_back(AprConstraint{trans_mask, tr, q_trans});
  }
  for (const auto& b : air.boundary) {
    ConstraintExpr cond = ConstraintExpr::sum(
        {ConstraintExpr::variable(1), ConstraintExpr::constant(b.value)});
    Polynomial q(field, {air.gamma.pow(b.row * w + b.col), field.one()});
    inst.constraints.push_back(AprConstraint{{field.one()}, cond, q});
  }
  return {std::move(inst), AprWitness{std::move(f_tilde)}};
}

// Ground-truth satisfaction check: find the roots of every Q^i by scanning
// the field, and evaluate the condition on the mask-shifted witness there.
inline bool apr_check(const AprInstance& inst, const AprWitness& wit) {
  const Field& field = inst.field;
  if (wit.f_tilde.degree() >= static_cast<int64_t>(inst.degree_bound)) return false;
  guards::check_search_space(field.n(), 20.0, "apr_check root scan");
  for (const auto& c : inst.constraints) {
    for (uint64_t xb = 0; xb < field.size(); ++xb) {
      FieldElement x = field.element(xb);
      if (!c.domain_poly(x).is_zero()) continue;
      std::vector<FieldElement> vars;
      vars.reserve(c.mask.size());
      for (const auto& m : c.mask) vars.push_back(wit.f_tilde(x * m));
      if (!c.condition.eval(field, vars).is_zero()) return false;
    }
  }
  return true;
}

// g_alpha = sum_i alpha_i * P^i(f(x*M^i_1), ...) / Q^i(x), by exact division.
// NonDivisible signals an invalid witness to the honest prover.
inline Polynomial compose_constraints(const Polynomial& f_tilde,
                                      const std::vector<FieldElement>& alpha,
                                      const AprInstance& inst) {
  DFRI_REQUIRE(alpha.size() == inst.constraints.size(), ErrorCode::kBadArgument,
               "one coefficient per constraint");
  const Field& field = inst.field;
  Polynomial acc(field);
  for (size_t i = 0; i < inst.constraints.size(); ++i) {
    const AprConstraint& c = inst.constraints[i];
    std::vector<Polynomial> shifted;
    shifted.reserve(c.mask.size());
    for (const auto& m : c.mask) shifted.push_back(f_tilde.compose_scale(m));
    Polynomial num = c.condition.eval_poly(field, shifted);
    auto [quo, rem] = num.divrem(c.domain_poly);
    DFRI_REQUIRE(rem.is_zero(), ErrorCode::kNonDivisible,
                 "constraint " + std::to_string(i) + " does not vanish on its domain");
    acc = acc + quo.scale(alpha[i]);
  }
  uint64_t bound = inst.degree_bound * std::max<uint64_t>(inst.max_condition_degree(), 1);
  DFRI_REQUIRE(acc.degree() < static_cast<int64_t>(bound), ErrorCode::kBadArgument,
               "composition degree exceeds d * d_C");
  return acc;
}

// Soundness error of the constraint-linking IOP:
//   eps + eps' + 2 L^2 (d*d_C + deg(Q_lcm)) / q.
inline double ali_soundness_bound(double list_size, double d, double d_c, double deg_qlcm,
                                  double q, double eps, double eps_prime) {
  return eps + eps_prime + 2 * list_size * list_size * (d * d_c + deg_qlcm) / q;
}

// ---------------------------------------------------------------------------
// Protocol transcript and oracles.
// ---------------------------------------------------------------------------

// h(x) = (inner(x) - U(x)) / Z(x): one inner query plus O(#points) arithmetic
// per evaluation. The verifier accesses h^1 and h^2 only through these.
class QuotientOracle : public OracleView {
 public:
  QuotientOracle(const OracleView& inner, std::vector<FieldElement> points,
                 std::vector<FieldElement> values)
      : inner_(inner),
        points_(std::move(points)),
        u_(interpolate_points(inner.domain().field(), points_, values)) {}

  FieldElement at(uint64_t index) const override {
    count();
    FieldElement x = inner_.domain().element(index);
    FieldElement z_at = x.field().one();
    for (const auto& p : points_) z_at *= (x + p);
    return (inner_.at(index) + u_(x)) * z_at.inv();
  }
  const Subspace& domain() const override { return inner_.domain(); }
  uint64_t inner_queries() const { return inner_.queries(); }

 private:
  const OracleView& inner_;
  std::vector<FieldElement> points_;
  Polynomial u_;
};

struct AliTranscript {
  AprInstance instance;
  uint64_t commit_seed;
  Evaluations f;  // witness oracle on D
  std::vector<FieldElement> alpha;
  Evaluations g;  // composition oracle on D'
  FieldElement z;
  uint32_t z_retries;
  std::vector<std::pair<FieldElement, FieldElement>> answers;  // (point, value), sorted
  DeepFriTranscript h1;  // layer 0 external: derived from f
  DeepFriTranscript h2;  // layer 0 external: derived from g
};

enum class AliProverMode {
  kHonest,         // exact polynomial division; throws NonDivisible when invalid
  kPointwiseRatio  // evaluates the constraint ratio pointwise on D' (the
                   // scripted cheating prover for invalid witnesses)
};

namespace detail_ali {

inline std::vector<FieldElement> qlcm_roots(const AprInstance& inst) {
  Polynomial qlcm = inst.q_lcm();
  std::vector<FieldElement> roots;
  for (uint64_t xb = 0; xb < inst.field.size(); ++xb) {
    FieldElement x = inst.field.element(xb);
    if (qlcm(x).is_zero()) roots.push_back(x);
  }
  return roots;
}

// z must keep every quotient well defined: z nonzero (so the mask points are
// distinct), Q_lcm(z) != 0 (the deduced value divides by Q^i(z)), the mask
// points clear of both evaluation domains, and z itself clear of D'.
inline bool z_ok(const AprInstance& inst, const std::vector<FieldElement>& mask,
                 const Subspace& domain_f, const Subspace& domain_g, const FieldElement& z,
                 const Polynomial& qlcm) {
  if (z.is_zero()) return false;
  if (qlcm(z).is_zero()) return false;
  if (domain_g.contains(z)) return false;
  for (const auto& m : mask) {
    FieldElement p = z * m;
    if (domain_f.contains(p) || domain_g.contains(p)) return false;
  }
  return true;
}

inline FieldElement deduce_b(const AprInstance& inst, const std::vector<FieldElement>& alpha,
                             const FieldElement& z,
                             const std::map<uint32_t, FieldElement>& answer_map) {
  const Field& field = inst.field;
  FieldElement b = field.zero();
  for (size_t i = 0; i < inst.constraints.size(); ++i) {
    const AprConstraint& c = inst.constraints[i];
    std::vector<FieldElement> vars;
    vars.reserve(c.mask.size());
    for (const auto& m : c.mask) {
      auto it = answer_map.find((z * m).bits());
      DFRI_REQUIRE(it != answer_map.end(), ErrorCode::kMalformedTranscript,
                   "missing mask answer");
      vars.push_back(it->second);
    }
    FieldElement num = c.condition.eval(field, vars);
    b += alpha[i] * num * c.domain_poly(z).inv();
  }
  return b;
}

inline void check_instance_domains(const AprInstance& inst, const Subspace& domain_f,
                                   const Subspace& domain_g) {
  uint64_t d = inst.degree_bound;
  uint64_t dc = std::max<uint64_t>(inst.max_condition_degree(), 1);
  DFRI_REQUIRE(domain_f.size() % d == 0, ErrorCode::kDomainSizeMismatch,
               "|D| must be d / rho");
  uint64_t inv_rate = domain_f.size() / d;
  DFRI_REQUIRE(inv_rate >= 2 && (inv_rate & (inv_rate - 1)) == 0,
               ErrorCode::kDomainSizeMismatch, "1/rho must be a power of two");
  DFRI_REQUIRE(domain_g.size() == d * dc * inv_rate, ErrorCode::kDomainSizeMismatch,
               "|D'| must be d * d_C / rho");
}

}  // namespace detail_ali

// Evaluation domains for the protocol: cosets of the canonical subspaces
// shifted clear of the constraint-domain roots (the trace subgroup).
inline std::pair<Subspace, Subspace> make_ali_domains(const AprInstance& inst, int rate_log) {
  const Field& field = inst.field;
  uint64_t d = inst.degree_bound;
  uint64_t dc = std::max<uint64_t>(inst.max_condition_degree(), 1);
  DFRI_REQUIRE((d & (d - 1)) == 0, ErrorCode::kDomainSizeMismatch,
               "degree bound must be a power of two for subspace domains");
  DFRI_REQUIRE((dc & (dc - 1)) == 0, ErrorCode::kDomainSizeMismatch,
               "d_C must be a power of two for subspace domains");
  auto log2u = [](uint64_t v) {
    int k = 0;
    while ((uint64_t{1} << k) < v) ++k;
    return k;
  };
  int dim_f = log2u(d) + rate_log;
  int dim_g = log2u(d * dc) + rate_log;
  DFRI_REQUIRE(dim_g < field.n(), ErrorCode::kDomainSizeMismatch,
               "field too small for the composition domain");
  std::vector<FieldElement> roots = detail_ali::qlcm_roots(inst);
  auto pick_shift = [&](int dim) {
    for (uint64_t s = 0; s < field.size(); ++s) {
      Subspace cand = Subspace::canonical(field, dim, field.element(s));
      bool clear = true;
      for (const auto& r : roots) {
        if (cand.contains(r)) {
          clear = false;
          break;
        }
      }
      if (clear) return cand;
    }
    throw Error(ErrorCode::kDomainSizeMismatch, "no coset avoids the constraint domain");
  };
  return {pick_shift(dim_f), pick_shift(dim_g)};
}

inline AliTranscript deep_ali_prove(const AprInstance& inst, const AprWitness& wit,
                                    const Subspace& domain_f, const Subspace& domain_g,
                                    Channel& channel,
                                    AliProverMode mode = AliProverMode::kHonest) {
  const Field& field = inst.field;
  detail_ali::check_instance_domains(inst, domain_f, domain_g);
  uint64_t d = inst.degree_bound;
  std::vector<FieldElement> mask = inst.full_mask();
  DFRI_REQUIRE(mask.size() < d, ErrorCode::kBadArgument,
               "mask at least as large as the degree bound");
  uint64_t seed = channel.seed();

  // 1: witness oracle.
  Evaluations f = encode(wit.f_tilde, domain_f);

  // 2: constraint-combination coefficients.
  std::vector<FieldElement> alpha;
  for (size_t i = 0; i < inst.constraints.size(); ++i)
    alpha.push_back(channel.field_element(field));

  // 3: composition oracle.
  Evaluations g = [&] {
    if (mode == AliProverMode::kHonest) {
      Polynomial g_tilde = compose_constraints(wit.f_tilde, alpha, inst);
      return encode(g_tilde, domain_g);
    }
    std::vector<FieldElement> vals;
    vals.reserve(domain_g.size());
    for (uint64_t i = 0; i < domain_g.size(); ++i) {
      FieldElement x = domain_g.element(i);
      FieldElement acc = field.zero();
      for (size_t c = 0; c < inst.constraints.size(); ++c) {
        const AprConstraint& con = inst.constraints[c];
        FieldElement qx = con.domain_poly(x);
        DFRI_REQUIRE(!qx.is_zero(), ErrorCode::kDomainOverlap,
                     "composition domain touches a constraint root");
        std::vector<FieldElement> vars;
        for (const auto& m : con.mask) vars.push_back(wit.f_tilde(x * m));
        acc += alpha[c] * con.condition.eval(field, vars) * qx.inv();
      }
      vals.push_back(acc);
    }
    return Evaluations(domain_g, std::move(vals));
  }();

  // 4: out-of-domain challenge, resampled on any collision.
  Polynomial qlcm = inst.q_lcm();
  uint32_t retries = 0;
  FieldElement z = field.zero();
  for (;;) {
    z = channel.field_element(field);
    if (detail_ali::z_ok(inst, mask, domain_f, domain_g, z, qlcm)) break;
    ++retries;
  }

  // 5: mask answers and the deduced composition value.
  std::map<uint32_t, FieldElement> answer_map;
  for (const auto& m : mask) {
    FieldElement p = z * m;
    answer_map.emplace(p.bits(), wit.f_tilde(p));
  }
  FieldElement b = detail_ali::deduce_b(inst, alpha, z, answer_map);

  // 6: quotients.
  Evaluations h1 = quotient_multi(f, answer_map);
  Evaluations h2 = quotient_single(g, z, b);

  // 7: proximity tests, on channels separated by domain tags.
  uint64_t dc = std::max<uint64_t>(inst.max_condition_degree(), 1);
  DeepFriParams p1(field, domain_f, d - mask.size());
  DeepFriParams p2(field, domain_g, d * dc - 1);
  Channel ch1 = channel.child("h1");
  Channel ch2 = channel.child("h2");
  DeepFriTranscript t1 = deep_commit(h1, p1, ch1);
  DeepFriTranscript t2 = deep_commit(h2, p2, ch2);
  // the verifier reconstructs layer 0 from f and g
  t1.layers.erase(t1.layers.begin());
  t1.has_layer0 = false;
  t2.layers.erase(t2.layers.begin());
  t2.has_layer0 = false;

  std::vector<std::pair<FieldElement, FieldElement>> answers;
  for (const auto& [bits, v] : answer_map) answers.emplace_back(field.element(bits), v);

  return AliTranscript{inst,    seed, std::move(f), std::move(alpha), std::move(g),
                       z,       retries, std::move(answers),
                       std::move(t1), std::move(t2)};
}

struct AliVerdict {
  bool accepted;
  DeepVerdict h1;
  DeepVerdict h2;
  uint64_t f_queries;
  uint64_t g_queries;
};

inline AliVerdict deep_ali_verify(const AliTranscript& t, size_t ell, Channel& channel) {
  const AprInstance& inst = t.instance;
  const Field& field = inst.field;
  const Subspace& domain_f = t.f.domain();
  const Subspace& domain_g = t.g.domain();
  detail_ali::check_instance_domains(inst, domain_f, domain_g);

  uint64_t d = inst.degree_bound;
  uint64_t dc = std::max<uint64_t>(inst.max_condition_degree(), 1);
  std::vector<FieldElement> mask = inst.full_mask();

  // Replay the commit-phase challenges.
  Channel replay(t.commit_seed);
  DFRI_REQUIRE(t.alpha.size() == inst.constraints.size(), ErrorCode::kMalformedTranscript,
               "coefficient count mismatch");
  for (const auto& a : t.alpha) {
    DFRI_REQUIRE(replay.field_element(field) == a, ErrorCode::kMalformedTranscript,
                 "alpha does not replay from the seed");
  }
  {
    Polynomial qlcm = inst.q_lcm();
    uint32_t retries = 0;
    FieldElement z = field.zero();
    for (;;) {
      z = replay.field_element(field);
      if (detail_ali::z_ok(inst, mask, domain_f, domain_g, z, qlcm)) break;
      ++retries;
    }
    DFRI_REQUIRE(z == t.z && retries == t.z_retries, ErrorCode::kMalformedTranscript,
                 "z does not replay from the seed");
  }

  // The answer set must cover exactly the mask points.
  std::map<uint32_t, FieldElement> answer_map;
  for (const auto& [p, v] : t.answers) answer_map.emplace(p.bits(), v);
  DFRI_REQUIRE(answer_map.size() == t.answers.size(), ErrorCode::kMalformedTranscript,
               "duplicate answer points");
  std::set<uint32_t> expected;
  for (const auto& m : mask) expected.insert((t.z * m).bits());
  DFRI_REQUIRE(answer_map.size() == expected.size(), ErrorCode::kMalformedTranscript,
               "answer count mismatch");
  for (uint32_t p : expected) {
    DFRI_REQUIRE(answer_map.count(p) == 1, ErrorCode::kMalformedTranscript,
                 "answer points do not match the mask");
  }

  // Deduce b and access h^1, h^2 through the local quotient views.
  FieldElement b = detail_ali::deduce_b(inst, t.alpha, t.z, answer_map);
  VectorOracle f_oracle(t.f);
  VectorOracle g_oracle(t.g);
  std::vector<FieldElement> pts1, vals1;
  for (const auto& [p, v] : t.answers) {
    pts1.push_back(p);
    vals1.push_back(v);
  }
  QuotientOracle h1_view(f_oracle, pts1, vals1);
  QuotientOracle h2_view(g_oracle, {t.z}, {b});

  DFRI_REQUIRE(t.h1.params.degree0 == d - mask.size(), ErrorCode::kMalformedTranscript,
               "h1 degree bound mismatch");
  DFRI_REQUIRE(t.h2.params.degree0 == d * dc - 1, ErrorCode::kMalformedTranscript,
               "h2 degree bound mismatch");
  DFRI_REQUIRE(t.h1.params.base_domain == domain_f, ErrorCode::kMalformedTranscript,
               "h1 domain mismatch");
  DFRI_REQUIRE(t.h2.params.base_domain == domain_g, ErrorCode::kMalformedTranscript,
               "h2 domain mismatch");
  DFRI_REQUIRE(t.h1.commit_seed == Channel(t.commit_seed).child("h1").seed(),
               ErrorCode::kMalformedTranscript, "h1 channel not derived from the seed");
  DFRI_REQUIRE(t.h2.commit_seed == Channel(t.commit_seed).child("h2").seed(),
               ErrorCode::kMalformedTranscript, "h2 channel not derived from the seed");

  Channel qch1 = channel.child("h1");
  Channel qch2 = channel.child("h2");
  DeepVerdict v1 = deep_verify(t.h1, ell, qch1, &h1_view);
  DeepVerdict v2 = deep_verify(t.h2, ell, qch2, &h2_view);
  return AliVerdict{v1.accepted && v2.accepted, std::move(v1), std::move(v2),
                    f_oracle.queries(), g_oracle.queries()};
}

}  // namespace deepfri

#endif  // DEEPFRI_DEEP_ALI_HPP
