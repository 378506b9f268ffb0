#include "rmlattice/oracle.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

#include "rmlattice/errors.hpp"
#include "rmlattice/modp.hpp"

namespace rmlattice {

namespace {

constexpr std::size_t kRank = 4;

std::vector<std::int64_t> reduced_entries(const Matrix& m, const Int& modulus) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out.push_back(mod_floor(m(i, j), modulus).convert_to<std::int64_t>());
  return out;
}

modp::Mat transpose(const modp::Mat& m) {
  modp::Mat t{m.p, std::vector<modp::Row>(m.col_count(), modp::Row(m.row_count(), 0))};
  for (std::size_t i = 0; i < m.row_count(); ++i)
    for (std::size_t j = 0; j < m.col_count(); ++j) t.rows[j][i] = m.rows[i][j];
  return t;
}

bool kernel_less(const KernelSubgroup& a, const KernelSubgroup& b) {
  if (a.denominator != b.denominator) return a.denominator < b.denominator;
  for (std::size_t i = 0; i < a.basis.rows(); ++i)
    for (std::size_t j = 0; j < a.basis.cols(); ++j)
      if (a.basis(i, j) != b.basis(i, j)) return a.basis(i, j) < b.basis(i, j);
  return false;
}

// Calls `visit` with every reduced echelon basis of a k-dimensional subspace of (Z/p)^n.
void for_each_echelon_basis(std::size_t n, std::size_t k, std::int64_t p,
                            const std::function<void(const std::vector<modp::Row>&)>& visit) {
  std::vector<std::size_t> pivots(k);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t idx, std::size_t from) {
    if (idx == k) {
      std::vector<std::pair<std::size_t, std::size_t>> free;
      std::vector<bool> is_pivot(n, false);
      for (auto c : pivots) is_pivot[c] = true;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = pivots[r] + 1; c < n; ++c)
          if (!is_pivot[c]) free.emplace_back(r, c);
      std::vector<modp::Row> rows(k, modp::Row(n, 0));
      for (std::size_t r = 0; r < k; ++r) rows[r][pivots[r]] = 1;
      std::function<void(std::size_t)> fill = [&](std::size_t f) {
        if (f == free.size()) {
          visit(rows);
          return;
        }
        for (std::int64_t v = 0; v < p; ++v) {
          rows[free[f].first][free[f].second] = v;
          fill(f + 1);
        }
        rows[free[f].first][free[f].second] = 0;
      };
      fill(0);
      return;
    }
    for (std::size_t c = from; c < n; ++c) {
      pivots[idx] = c;
      choose(idx + 1, c + 1);
    }
  };
  choose(0, 0);
}

}  // namespace

std::vector<KernelSubgroup> enumerate_valid_kernels(const PolarizedRMSurface& s, const Int& ell) {
  if (ell == 2 || !is_prime(ell)) throw std::invalid_argument("expected an odd prime");
  if (ell > 7) throw std::invalid_argument("enumeration is limited to primes up to 7");
  const auto p = ell.convert_to<std::int64_t>();
  const std::int64_t p2 = p * p;
  const auto a = reduced_entries(s.action, ell);
  const auto e = reduced_entries(s.gram, Int(p2));

  std::vector<KernelSubgroup> out;
  for (std::size_t k = 0; k <= kRank; ++k) {
    for_each_echelon_basis(kRank, k, p, [&](const std::vector<modp::Row>& rows) {
      for (const auto& w : rows) {
        modp::Row aw(kRank, 0);
        for (std::size_t i = 0; i < kRank; ++i) {
          std::int64_t acc = 0, ew = 0;
          for (std::size_t j = 0; j < kRank; ++j) {
            acc += a[i * kRank + j] * w[j];
            ew += e[i * kRank + j] * w[j];
          }
          aw[i] = acc % p;
          if (ew % p != 0) return;  // w / ell is not in L*
        }
        if (!modp::contains(rows, aw, p)) return;
      }
      for (const auto& u : rows)
        for (const auto& w : rows) {
          std::int64_t acc = 0;
          for (std::size_t i = 0; i < kRank; ++i)
            for (std::size_t j = 0; j < kRank; ++j) acc = (acc + u[i] * e[i * kRank + j] * w[j]) % p2;
          if (acc != 0) return;
        }
      std::vector<Vector> cols;
      for (const auto& w : rows) cols.emplace_back(w.begin(), w.end());
      out.push_back(cols.empty() ? KernelSubgroup::trivial()
                                 : KernelSubgroup::from_generators(Matrix::from_columns(cols), ell));
    });
  }
  std::sort(out.begin(), out.end(), kernel_less);
  return out;
}

Int gaussian_binomial(unsigned n, unsigned k, const Int& q) {
  if (k > n) return 0;
  Int num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= pow(q, n - i) - 1;
    den *= pow(q, i + 1) - 1;
  }
  return num / den;
}

bool check_symmetric_rank_even(const Int& ell, int trials, std::uint64_t seed) {
  if (ell == 2 || !is_prime(ell)) throw std::invalid_argument("expected an odd prime");
  const auto p = ell.convert_to<std::int64_t>();
  std::mt19937_64 rng(seed);
  auto draw = [&] { return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p)); };

  for (int trial = 0; trial < trials; ++trial) {
    modp::Mat b{p, std::vector<modp::Row>(kRank, modp::Row(kRank, 0))};
    do {
      for (std::size_t i = 0; i < kRank; ++i)
        for (std::size_t j = i + 1; j < kRank; ++j) {
          b.rows[i][j] = draw();
          b.rows[j][i] = modp::reduce(-b.rows[i][j], p);
        }
    } while (modp::determinant(b) == 0);

    // Unknowns eps[a][b] at index 4a + b; rows encode (B eps - eps^T B)[i][j] = 0.
    modp::Mat system{p, std::vector<modp::Row>(kRank * kRank, modp::Row(kRank * kRank, 0))};
    for (std::size_t i = 0; i < kRank; ++i)
      for (std::size_t j = 0; j < kRank; ++j) {
        auto& row = system.rows[i * kRank + j];
        for (std::size_t k = 0; k < kRank; ++k) {
          row[k * kRank + j] = modp::reduce(row[k * kRank + j] + b.rows[i][k], p);
          row[k * kRank + i] = modp::reduce(row[k * kRank + i] - b.rows[k][j], p);
        }
      }
    const auto symmetric = modp::nullspace(system);
    if (symmetric.empty()) return false;  // the identity is always symmetric

    modp::Mat eps{p, std::vector<modp::Row>(kRank, modp::Row(kRank, 0))};
    bool nonzero = false;
    while (!nonzero) {
      modp::Row flat(kRank * kRank, 0);
      for (const auto& basis : symmetric) {
        const std::int64_t c = draw();
        for (std::size_t idx = 0; idx < flat.size(); ++idx) flat[idx] = (flat[idx] + c * basis[idx]) % p;
      }
      for (std::size_t idx = 0; idx < flat.size(); ++idx) {
        eps.rows[idx / kRank][idx % kRank] = flat[idx];
        nonzero = nonzero || flat[idx] != 0;
      }
    }
    if (modp::multiply(b, eps).rows != modp::multiply(transpose(eps), b).rows) return false;
    if (modp::rank(eps) % 2 != 0) return false;
    for (int k = 0; k < 8; ++k) {
      modp::Row v(kRank);
      for (auto& x : v) x = draw();
      const modp::Row ev = modp::apply(eps, v);
      const modp::Row bv = modp::apply(b, v);
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < kRank; ++i) acc = (acc + ev[i] * bv[i]) % p;
      if (acc != 0) return false;
    }
  }
  return true;
}

namespace {

std::string first_step_difference(const IsogenyStep& a, const IsogenyStep& b) {
  if (a.kind != b.kind) return "kind";
  if (a.prime != b.prime) return "prime";
  if (a.kernel != b.kernel) return "kernel_overlattice";
  if (a.alpha != b.alpha) return "alpha";
  if (a.degree_before != b.degree_before) return "degree_before";
  if (a.degree_after != b.degree_after) return "degree_after";
  if (a.t != b.t) return "t";
  if (a.branch != b.branch) return "branch";
  return {};
}

VerificationResult fail(std::string where, const std::string& why = {}) {
  return {false, why.empty() ? where : where + ": " + why};
}

}  // namespace

VerificationResult verify_certificate(const PolarizedRMSurface& input,
                                      const PipelineReport& report) {
  if (auto v = validate(input); !v) return fail("input", v.diagnostic);
  if (report.seed != fingerprint(input)) return fail("seed", "does not match the input fingerprint");

  PolarizedRMSurface cur = reseat_to_stabilizer(input);
  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    const IsogenyStep& step = report.steps[i];
    const std::string where = "steps[" + std::to_string(i) + "]";
    if (degree(cur) != step.degree_before) return fail(where + ".degree_before");
    const bool needs_kernel = step.kind == StepKind::quotient;
    if (step.kernel.has_value() != needs_kernel) return fail(where + ".kernel_overlattice");
    if (step.kernel && !is_canonical_overlattice(*step.kernel))
      return fail(where + ".kernel_overlattice", "not a canonical overlattice");
    if (step.alpha.has_value() != (step.kind == StepKind::divide_by_alpha)) return fail(where + ".alpha");
    if (step.prime < 3 || !is_prime(step.prime)) return fail(where + ".prime");
    if (step.t) {
      if (step.kind != StepKind::quotient || *step.t != 2) return fail(where + ".t");
      if (step.kernel->order() != pow(step.prime, 6))
        return fail(where + ".kernel_overlattice", "kernel order is not prime^6");
    }
    PolarizedRMSurface next;
    try {
      next = apply_step(cur, step);
    } catch (const std::exception& e) {
      return fail(where, e.what());
    }
    if (degree(next) != step.degree_after) return fail(where + ".degree_after");
    if (!ledger_holds(step)) return fail(where, "degree ledger identity fails");
    if (auto v = validate(next); !v) return fail(where, v.diagnostic);
    cur = std::move(next);
  }
  if (!(cur == report.output)) return fail("final", "replayed surface differs");
  if (degree(cur) != 1) return fail("final", "not principal");
  if (stabilizer_order(cur).conductor != 1) return fail("final", "order is not maximal");

  PipelineReport fresh;
  try {
    fresh = principalize(input);
  } catch (const std::exception& e) {
    return fail("input", std::string("principalize failed: ") + e.what());
  }
  const std::size_t common = std::min(fresh.steps.size(), report.steps.size());
  for (std::size_t i = 0; i < common; ++i)
    if (auto field = first_step_difference(report.steps[i], fresh.steps[i]); !field.empty())
      return fail("steps[" + std::to_string(i) + "]." + field, "differs from a fresh run");
  if (fresh.steps.size() != report.steps.size()) return fail("steps", "step count differs from a fresh run");
  if (!(fresh.output == report.output)) return fail("final", "differs from a fresh run");
  return {};
}

}  // namespace rmlattice
