#include "ncb/groebner/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

namespace ncb {

const char* to_string(IdealStatus status) {
  switch (status) {
    case IdealStatus::NoCommonRoot:
      return "no-common-root";
    case IdealStatus::HasCommonRootOrUnknown:
      return "has-common-root-or-unknown";
    case IdealStatus::Timeout:
      return "timeout";
  }
  return "unknown";
}

namespace {

using Cofactors = std::vector<Polynomial>;

struct Element {
  Polynomial poly;
  Cofactors cof;  // empty when not tracking
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

// Reduces f completely by the basis; when tracking, cof is updated so that
// f_out = f_in - sum q_k g_k continues to satisfy f = sum cof_i gen_i.
template <bool Track>
void reduce(Polynomial& f, Cofactors& cof, const std::vector<Element>& basis) {
  Polynomial rest(f.num_vars(), f.order());
  while (!f.is_zero()) {
    const Term lt = f.leading();
    const Element* hit = nullptr;
    for (const auto& g : basis)
      if (divides(g.poly.leading().mono, lt.mono)) {
        hit = &g;
        break;
      }
    if (!hit) {
      // Terms leave f in decreasing order, so appending keeps rest sorted.
      rest.append_lower(lt);
      f.drop_leading();
      continue;
    }
    const Monomial q = quotient(lt.mono, hit->poly.leading().mono);
    const Rational c = lt.coeff / hit->poly.leading().coeff;
    f -= hit->poly.times_term(q, c);
    if constexpr (Track)
      for (std::size_t k = 0; k < cof.size(); ++k) cof[k] -= hit->cof[k].times_term(q, c);
  }
  f = std::move(rest);
}

template <bool Track>
struct Run {
  IdealStatus status = IdealStatus::HasCommonRootOrUnknown;
  std::vector<Element> basis;
  std::size_t pairs_processed = 0;
  std::size_t constant_index = 0;
};

template <bool Track>
Run<Track> run_buchberger(const std::vector<Polynomial>& gens, const GroebnerLimits& limits) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const std::size_t nvars = gens.front().num_vars();
  const MonomialOrder order = gens.front().order();
  Run<Track> run;
  bool truncated = false;

  std::vector<Pair> pending;
  std::set<std::pair<std::size_t, std::size_t>> untreated;

  auto add = [&](Polynomial p, Cofactors cof) -> bool {
    const Rational lc = p.leading().coeff;
    p.make_monic();
    if constexpr (Track)
      for (auto& c : cof) c = c.scaled(1 / lc);
    const std::size_t idx = run.basis.size();
    const bool constant = p.is_constant();
    run.basis.push_back(Element{std::move(p), std::move(cof)});
    if (constant) {
      run.constant_index = idx;
      return true;
    }
    for (std::size_t k = 0; k < idx; ++k) {
      pending.push_back(Pair{k, idx, lcm(run.basis[k].poly.leading().mono, run.basis[idx].poly.leading().mono)});
      untreated.insert({k, idx});
    }
    return false;
  };

  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (gens[g].is_zero()) continue;
    Cofactors cof;
    if constexpr (Track) {
      cof.assign(gens.size(), Polynomial(nvars, order));
      cof[g] = Polynomial::constant(nvars, 1, order);
    }
    if (add(gens[g], std::move(cof))) {
      run.status = IdealStatus::NoCommonRoot;
      return run;
    }
  }

  auto is_untreated = [&](std::size_t a, std::size_t b) { return untreated.count({std::min(a, b), std::max(a, b)}) > 0; };

  while (!pending.empty()) {
    if (run.pairs_processed >= limits.max_pairs ||
        std::chrono::duration<double>(clock::now() - start).count() > limits.time_budget_seconds) {
      run.status = IdealStatus::Timeout;
      return run;
    }
    // Normal strategy: smallest lcm first; ties broken by insertion order.
    std::size_t best = 0;
    for (std::size_t p = 1; p < pending.size(); ++p)
      if (greater(pending[best].lcm, pending[p].lcm, order)) best = p;
    const Pair pair = pending[best];
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));

    const Monomial& li = run.basis[pair.i].poly.leading().mono;
    const Monomial& lj = run.basis[pair.j].poly.leading().mono;

    // Criteria first: a pair they discard is treated, whatever its degree.
    bool skip = coprime(li, lj);
    for (std::size_t k = 0; k < run.basis.size() && !skip; ++k) {
      if (k == pair.i || k == pair.j) continue;
      if (divides(run.basis[k].poly.leading().mono, pair.lcm) && !is_untreated(pair.i, k) && !is_untreated(pair.j, k))
        skip = true;
    }
    if (skip) {
      untreated.erase({pair.i, pair.j});
      continue;
    }
    if (pair.lcm.degree > limits.max_degree) {
      truncated = true;  // stays untreated so the chain criterion never relies on it
      continue;
    }
    untreated.erase({pair.i, pair.j});

    ++run.pairs_processed;
    const Element& a = run.basis[pair.i];
    const Element& b = run.basis[pair.j];
    const Monomial qa = quotient(pair.lcm, li), qb = quotient(pair.lcm, lj);
    Polynomial s = a.poly.times_term(qa, 1) - b.poly.times_term(qb, 1);
    Cofactors cof;
    if constexpr (Track) {
      cof.resize(gens.size());
      for (std::size_t k = 0; k < gens.size(); ++k) cof[k] = a.cof[k].times_term(qa, 1) - b.cof[k].times_term(qb, 1);
    }
    reduce<Track>(s, cof, run.basis);
    if (s.is_zero()) continue;
    if (add(std::move(s), std::move(cof))) {
      run.status = IdealStatus::NoCommonRoot;
      return run;
    }
  }
  run.status = truncated ? IdealStatus::Timeout : IdealStatus::HasCommonRootOrUnknown;
  return run;
}

std::vector<Polynomial> reduced_basis(const std::vector<Element>& basis) {
  std::vector<Element> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& li = basis[i].poly.leading().mono;
      const Monomial& lj = basis[j].poly.leading().mono;
      // Equal leading monomials: keep the earlier element.
      if (divides(lj, li) && (!(li == lj) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(Element{basis[i].poly, {}});
  }
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Element> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Polynomial p = minimal[i].poly;
    Cofactors none;
    // Keep the leading term and reduce the tail.
    Polynomial lead(p.num_vars(), p.order());
    lead.add_term(p.leading().mono, p.leading().coeff);
    Polynomial tail = p - lead;
    reduce<false>(tail, none, others);
    out.push_back(lead + tail);
  }
  std::sort(out.begin(), out.end(), [](const Polynomial& x, const Polynomial& y) {
    return greater(y.leading().mono, x.leading().mono, x.order());
  });
  return out;
}

}  // namespace

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& g) {
  std::vector<Element> basis;
  for (const auto& p : g)
    if (!p.is_zero()) basis.push_back(Element{p, {}});
  Polynomial out = f;
  Cofactors none;
  reduce<false>(out, none, basis);
  return out;
}

IdealDecision buchberger(const std::vector<Polynomial>& gens, const GroebnerLimits& limits) {
  if (gens.empty()) throw std::invalid_argument("buchberger: no generators");
  for (const auto& g : gens)
    if (g.num_vars() != gens.front().num_vars() || g.order() != gens.front().order())
      throw std::invalid_argument("buchberger: generators differ in variable count or order");

  IdealDecision out;
  const Run<false> plain = run_buchberger<false>(gens, limits);
  out.status = plain.status;
  out.basis_size = plain.basis.size();
  out.pairs_processed = plain.pairs_processed;
  if (plain.status == IdealStatus::HasCommonRootOrUnknown) out.basis = reduced_basis(plain.basis);
  if (plain.status != IdealStatus::NoCommonRoot) return out;

  // Second pass along the identical path, now carrying cofactors. It stops
  // at the same constant, so the budget is not re-applied.
  GroebnerLimits unlimited = limits;
  unlimited.time_budget_seconds = 1e300;
  const Run<true> tracked = run_buchberger<true>(gens, unlimited);
  if (tracked.status != IdealStatus::NoCommonRoot)
    throw std::logic_error("buchberger: tracking pass diverged from the plain pass");
  const Element& c = tracked.basis[tracked.constant_index];
  // c.poly is the constant 1 after make_monic.
  out.certificate = c.cof;
  if (!verify_cofactors(gens, *out.certificate))
    throw std::logic_error("buchberger: cofactor combination does not reproduce 1");
  return out;
}

bool verify_cofactors(const std::vector<Polynomial>& gens, const std::vector<Polynomial>& cofactors) {
  if (gens.empty() || cofactors.size() != gens.size()) return false;
  Polynomial sum(gens.front().num_vars(), gens.front().order());
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (!cofactors[k].is_zero()) sum += cofactors[k] * gens[k];
  return sum == Polynomial::constant(gens.front().num_vars(), 1, gens.front().order());
}

}  // namespace ncb
