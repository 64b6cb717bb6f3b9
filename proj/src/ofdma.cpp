#include "fdnet/ofdma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fdnet/channel.hpp"
#include "fdnet/waterfill.hpp"

namespace fdnet {

namespace {

void check_scenario(const OfdmaScenario& scn) {
  if (scn.m < 1) throw std::invalid_argument("ofdma: need at least one user");
  if (scn.k < scn.m)
    throw std::invalid_argument("ofdma: need at least as many subcarriers as users");
  const auto m = static_cast<std::size_t>(scn.m);
  const auto k = static_cast<std::size_t>(scn.k);
  if (scn.g_up.rows() != m || scn.g_up.cols() != k || scn.g_down.rows() != m ||
      scn.g_down.cols() != k || scn.g_cross.ni() != m ||
      scn.g_cross.nj() != m || scn.g_cross.nk() != k ||
      scn.rsi_bs.size() != k)
    throw std::invalid_argument("ofdma: gain table shape mismatch");
  if (scn.p_user < 0.0 || scn.p_bs_total < 0.0 || scn.noise <= 0.0)
    throw std::invalid_argument("ofdma: powers must be >= 0 and noise > 0");
}

void check_triple(const OfdmaScenario& scn, int tx, int rx, int subcarrier) {
  if (tx < 0 || tx >= scn.m || rx < 0 || rx >= scn.m || subcarrier < 0 ||
      subcarrier >= scn.k)
    throw std::invalid_argument("ofdma: triple index out of range");
}

// Preference table under the uniform split, indexed (tx, subcarrier, rx).
struct ValueTable {
  int m, k;
  std::vector<double> v;
  double vmax = 0.0;

  double at(int i, int kk, int j) const {
    return v[(static_cast<std::size_t>(i) * k + kk) * m + j];
  }
};

ValueTable build_values(const OfdmaScenario& scn) {
  ValueTable t{scn.m, scn.k, {}, 0.0};
  t.v.resize(static_cast<std::size_t>(scn.m) * scn.k * scn.m);
  const double p_down = scn.p_bs_total / scn.m;
  std::size_t idx = 0;
  for (int i = 0; i < scn.m; ++i)
    for (int kk = 0; kk < scn.k; ++kk)
      for (int j = 0; j < scn.m; ++j) {
        const double r = unit_rate(scn, i, j, kk, p_down);
        t.v[idx++] = r;
        t.vmax = std::max(t.vmax, r);
      }
  return t;
}

// Local exchange polish: single users move to better free subcarriers, and
// user pairs are re-solved exactly over their two RX users and the
// subcarrier pool they could jointly reach. Strict improvements only, so it
// terminates and never degrades the matching.
void polish(const ValueTable& t, std::vector<int>& mk, std::vector<int>& mj) {
  const int m = t.m, k = t.k;
  bool improved = true;
  for (int sweep = 0; improved && sweep < 100; ++sweep) {
    improved = false;
    std::vector<char> used(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < m; ++i) used[static_cast<std::size_t>(mk[i])] = 1;
    for (int i = 0; i < m; ++i) {
      for (int kk = 0; kk < k; ++kk) {
        if (used[static_cast<std::size_t>(kk)]) continue;
        if (t.at(i, kk, mj[i]) > t.at(i, mk[i], mj[i]) + 1e-15) {
          used[static_cast<std::size_t>(mk[i])] = 0;
          used[static_cast<std::size_t>(kk)] = 1;
          mk[i] = kk;
          improved = true;
        }
      }
    }
    for (int i1 = 0; i1 < m; ++i1)
      for (int i2 = i1 + 1; i2 < m; ++i2) {
        std::vector<int> pool;
        for (int kk = 0; kk < k; ++kk)
          if (!used[static_cast<std::size_t>(kk)] || kk == mk[i1] ||
              kk == mk[i2])
            pool.push_back(kk);
        const double cur = t.at(i1, mk[i1], mj[i1]) + t.at(i2, mk[i2], mj[i2]);
        double best = cur;
        int bk1 = -1, bj1 = 0, bk2 = 0, bj2 = 0;
        for (int swap_rx = 0; swap_rx < 2; ++swap_rx) {
          const int ja = swap_rx ? mj[i2] : mj[i1];
          const int jb = swap_rx ? mj[i1] : mj[i2];
          for (int ka : pool)
            for (int kb : pool) {
              if (ka == kb) continue;
              const double s = t.at(i1, ka, ja) + t.at(i2, kb, jb);
              if (s > best + 1e-15) {
                best = s;
                bk1 = ka;
                bj1 = ja;
                bk2 = kb;
                bj2 = jb;
              }
            }
        }
        if (bk1 >= 0) {
          used[static_cast<std::size_t>(mk[i1])] = 0;
          used[static_cast<std::size_t>(mk[i2])] = 0;
          mk[i1] = bk1;
          mj[i1] = bj1;
          mk[i2] = bk2;
          mj[i2] = bj2;
          used[static_cast<std::size_t>(bk1)] = 1;
          used[static_cast<std::size_t>(bk2)] = 1;
          improved = true;
        }
      }
  }
}

PairingAssignment to_assignment(const std::vector<int>& mk,
                                const std::vector<int>& mj) {
  PairingAssignment asg;
  asg.triples.reserve(mk.size());
  for (std::size_t i = 0; i < mk.size(); ++i)
    asg.triples.push_back({mk[i], static_cast<int>(i), mj[i]});
  return asg;
}

// Sorted-triple representation for deterministic tie comparisons.
std::vector<std::array<int, 3>> canonical_triples(const PairingAssignment& a) {
  std::vector<std::array<int, 3>> out;
  out.reserve(a.triples.size());
  for (const auto& t : a.triples) out.push_back({t.subcarrier, t.tx, t.rx});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double unit_rate(const OfdmaScenario& scn, int tx, int rx, int subcarrier,
                 double p_down) {
  check_scenario(scn);
  check_triple(scn, tx, rx, subcarrier);
  if (!std::isfinite(p_down) || p_down < 0.0)
    throw std::invalid_argument("ofdma: p_down must be >= 0");
  const auto i = static_cast<std::size_t>(tx);
  const auto j = static_cast<std::size_t>(rx);
  const auto kk = static_cast<std::size_t>(subcarrier);
  const double up =
      scn.p_user * scn.g_up(i, kk) / (scn.rsi_bs[kk] + scn.noise);
  const double down = p_down * scn.g_down(j, kk) /
                      (scn.p_user * scn.g_cross(i, j, kk) + scn.noise);
  return rate(up) + rate(down);
}

PowerSplit split_bs_power(const OfdmaScenario& scn,
                          const PairingAssignment& asg, SplitRule rule) {
  check_scenario(scn);
  if (asg.triples.empty())
    throw std::invalid_argument("ofdma: cannot split power over an empty assignment");
  if (!is_feasible(asg, scn.m, scn.k))
    throw std::invalid_argument("ofdma: infeasible assignment");
  PowerSplit split;
  const std::size_t n = asg.triples.size();
  if (rule == SplitRule::Uniform) {
    split.p_down.assign(n, scn.p_bs_total / static_cast<double>(n));
    return split;
  }
  ParallelChannels ch;
  ch.p_total = scn.p_bs_total;
  ch.eff_gain.reserve(n);
  for (const auto& t : asg.triples) {
    const auto i = static_cast<std::size_t>(t.tx);
    const auto j = static_cast<std::size_t>(t.rx);
    const auto kk = static_cast<std::size_t>(t.subcarrier);
    ch.eff_gain.push_back(scn.g_down(j, kk) /
                          (scn.p_user * scn.g_cross(i, j, kk) + scn.noise));
  }
  split.p_down = waterfill(ch).power;
  return split;
}

double sum_rate(const OfdmaScenario& scn, const PairingAssignment& asg,
                const PowerSplit& split) {
  check_scenario(scn);
  if (split.p_down.size() != asg.triples.size())
    throw std::invalid_argument("ofdma: power split does not cover the assignment");
  if (!is_feasible(asg, scn.m, scn.k))
    throw std::invalid_argument("ofdma: infeasible assignment");
  double total = 0.0;
  for (std::size_t t = 0; t < asg.triples.size(); ++t)
    total += unit_rate(scn, asg.triples[t].tx, asg.triples[t].rx,
                       asg.triples[t].subcarrier, split.p_down[t]);
  return total;
}

bool is_feasible(const PairingAssignment& asg, int m, int k) {
  std::vector<char> tx_used(static_cast<std::size_t>(m), 0);
  std::vector<char> rx_used(static_cast<std::size_t>(m), 0);
  std::vector<char> sub_used(static_cast<std::size_t>(k), 0);
  for (const auto& t : asg.triples) {
    if (t.tx < 0 || t.tx >= m || t.rx < 0 || t.rx >= m || t.subcarrier < 0 ||
        t.subcarrier >= k)
      return false;
    if (tx_used[static_cast<std::size_t>(t.tx)] ||
        rx_used[static_cast<std::size_t>(t.rx)] ||
        sub_used[static_cast<std::size_t>(t.subcarrier)])
      return false;
    tx_used[static_cast<std::size_t>(t.tx)] = 1;
    rx_used[static_cast<std::size_t>(t.rx)] = 1;
    sub_used[static_cast<std::size_t>(t.subcarrier)] = 1;
  }
  return true;
}

MatchingResult price_matching(const OfdmaScenario& scn, SplitRule rule,
                              double epsilon) {
  (void)rule;  // preferences are always evaluated under the uniform split
  check_scenario(scn);
  const ValueTable t = build_values(scn);
  const int m = scn.m, k = scn.k;
  if (epsilon <= 0.0)
    epsilon = t.vmax > 0.0 ? 1e-3 * t.vmax : 1e-3;
  if (!std::isfinite(epsilon))
    throw std::invalid_argument("ofdma: bad price step");

  const std::uint64_t cap =
      static_cast<std::uint64_t>(m) +
      static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(k) *
          static_cast<std::uint64_t>(std::ceil(t.vmax / epsilon) + 1.0);

  MatchingResult res;
  res.prices.rx_price.assign(static_cast<std::size_t>(m), 0.0);
  res.prices.subcarrier_price.assign(static_cast<std::size_t>(k), 0.0);
  auto& rxp = res.prices.rx_price;
  auto& subp = res.prices.subcarrier_price;

  std::vector<int> mk(static_cast<std::size_t>(m), -1);
  std::vector<int> mj(static_cast<std::size_t>(m), -1);
  std::vector<int> sub_holder(static_cast<std::size_t>(k), -1);
  std::vector<int> rx_holder(static_cast<std::size_t>(m), -1);
  int n_unmatched = m;

  std::uint64_t rounds = 0;
  std::vector<int> snapshot;
  while (n_unmatched > 0 && rounds < cap) {
    ++rounds;
    snapshot.clear();
    for (int i = 0; i < m; ++i)
      if (mk[static_cast<std::size_t>(i)] < 0) snapshot.push_back(i);
    for (int i : snapshot) {
      if (mk[static_cast<std::size_t>(i)] >= 0) continue;
      // Best and second-best net value; ties keep the first (k, j) visited.
      double n1 = -std::numeric_limits<double>::infinity();
      double n2 = n1;
      int bk = 0, bj = 0;
      for (int kk = 0; kk < k; ++kk)
        for (int j = 0; j < m; ++j) {
          const double net = t.at(i, kk, j) - rxp[static_cast<std::size_t>(j)] -
                             subp[static_cast<std::size_t>(kk)];
          if (net > n1) {
            n2 = n1;
            n1 = net;
            bk = kk;
            bj = j;
          } else if (net > n2) {
            n2 = net;
          }
        }
      const double delta = std::isinf(n2) ? epsilon : n1 - n2 + epsilon;
      const int inc_sub = sub_holder[static_cast<std::size_t>(bk)];
      const int inc_rx = rx_holder[static_cast<std::size_t>(bj)];
      for (int inc : {inc_sub, inc_rx}) {
        if (inc < 0 || mk[static_cast<std::size_t>(inc)] < 0) continue;
        sub_holder[static_cast<std::size_t>(mk[static_cast<std::size_t>(inc)])] = -1;
        rx_holder[static_cast<std::size_t>(mj[static_cast<std::size_t>(inc)])] = -1;
        mk[static_cast<std::size_t>(inc)] = -1;
        mj[static_cast<std::size_t>(inc)] = -1;
        ++n_unmatched;
      }
      mk[static_cast<std::size_t>(i)] = bk;
      mj[static_cast<std::size_t>(i)] = bj;
      sub_holder[static_cast<std::size_t>(bk)] = i;
      rx_holder[static_cast<std::size_t>(bj)] = i;
      --n_unmatched;
      // The proposer's margin lands on whichever resource was contested.
      if (inc_sub >= 0 && inc_rx >= 0) {
        subp[static_cast<std::size_t>(bk)] += delta / 2.0;
        rxp[static_cast<std::size_t>(bj)] += delta / 2.0;
      } else if (inc_sub >= 0) {
        subp[static_cast<std::size_t>(bk)] += delta;
      } else if (inc_rx >= 0) {
        rxp[static_cast<std::size_t>(bj)] += delta;
      }
    }
  }

  // Price standoffs (possible only when k == m) end in a deterministic
  // greedy completion of the leftover users.
  while (n_unmatched > 0) {
    double best = -std::numeric_limits<double>::infinity();
    int bi = -1, bk = 0, bj = 0;
    for (int i = 0; i < m; ++i) {
      if (mk[static_cast<std::size_t>(i)] >= 0) continue;
      for (int kk = 0; kk < k; ++kk) {
        if (sub_holder[static_cast<std::size_t>(kk)] >= 0) continue;
        for (int j = 0; j < m; ++j) {
          if (rx_holder[static_cast<std::size_t>(j)] >= 0) continue;
          if (t.at(i, kk, j) > best) {
            best = t.at(i, kk, j);
            bi = i;
            bk = kk;
            bj = j;
          }
        }
      }
    }
    mk[static_cast<std::size_t>(bi)] = bk;
    mj[static_cast<std::size_t>(bi)] = bj;
    sub_holder[static_cast<std::size_t>(bk)] = bi;
    rx_holder[static_cast<std::size_t>(bj)] = bi;
    --n_unmatched;
  }

  polish(t, mk, mj);
  res.assignment = to_assignment(mk, mj);
  res.iterations = static_cast<int>(rounds);
  return res;
}

CentralizedResult centralized_exhaustive(const OfdmaScenario& scn,
                                         SplitRule rule) {
  check_scenario(scn);
  if (scn.m > 6 || scn.k > 8)
    throw std::length_error("ofdma: centralized search limited to m <= 6, k <= 8");
  const int m = scn.m, k = scn.k;
  const ValueTable t = build_values(scn);

  CentralizedResult res;
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> subs(static_cast<std::size_t>(m), -1);
  std::vector<char> sub_used(static_cast<std::size_t>(k), 0);

  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> best_subs, best_perm;
  std::vector<std::array<int, 3>> best_canon;

  // Uniform evaluation reuses the value table; water-filling re-splits the
  // downlink budget per candidate.
  const auto evaluate = [&](const std::vector<int>& s,
                            const std::vector<int>& p) {
    if (rule == SplitRule::Uniform) {
      double sum = 0.0;
      for (int i = 0; i < m; ++i)
        sum += t.at(i, s[static_cast<std::size_t>(i)],
                    p[static_cast<std::size_t>(i)]);
      return sum;
    }
    PairingAssignment asg;
    for (int i = 0; i < m; ++i)
      asg.triples.push_back({s[static_cast<std::size_t>(i)], i,
                             p[static_cast<std::size_t>(i)]});
    return sum_rate(scn, asg, split_bs_power(scn, asg, rule));
  };

  const auto consider = [&]() {
    ++res.candidates_evaluated;
    const double sum = evaluate(subs, perm);
    if (sum > best) {
      best = sum;
      best_subs = subs;
      best_perm = perm;
      best_canon.clear();
    } else if (sum == best) {
      PairingAssignment cand;
      for (int i = 0; i < m; ++i)
        cand.triples.push_back({subs[static_cast<std::size_t>(i)], i,
                                perm[static_cast<std::size_t>(i)]});
      if (best_canon.empty()) {
        PairingAssignment cur;
        for (int i = 0; i < m; ++i)
          cur.triples.push_back({best_subs[static_cast<std::size_t>(i)], i,
                                 best_perm[static_cast<std::size_t>(i)]});
        best_canon = canonical_triples(cur);
      }
      auto canon = canonical_triples(cand);
      if (canon < best_canon) {
        best_subs = subs;
        best_perm = perm;
        best_canon = std::move(canon);
      }
    }
  };

  const auto assign_subs = [&](auto&& self, int depth) -> void {
    if (depth == m) {
      consider();
      return;
    }
    for (int kk = 0; kk < k; ++kk) {
      if (sub_used[static_cast<std::size_t>(kk)]) continue;
      sub_used[static_cast<std::size_t>(kk)] = 1;
      subs[static_cast<std::size_t>(depth)] = kk;
      self(self, depth + 1);
      sub_used[static_cast<std::size_t>(kk)] = 0;
    }
  };

  do {
    assign_subs(assign_subs, 0);
  } while (std::next_permutation(perm.begin(), perm.end()));

  for (int i = 0; i < m; ++i)
    res.assignment.triples.push_back({best_subs[static_cast<std::size_t>(i)],
                                      i,
                                      best_perm[static_cast<std::size_t>(i)]});
  res.sum_rate = evaluate(best_subs, best_perm);
  return res;
}

PairingAssignment random_matching(const OfdmaScenario& scn, RngStream& rng) {
  check_scenario(scn);
  const int m = scn.m, k = scn.k;
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = m - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(
        rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[j]);
  }
  std::vector<int> subs(static_cast<std::size_t>(k));
  std::iota(subs.begin(), subs.end(), 0);
  for (int i = k - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(
        rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(subs[static_cast<std::size_t>(i)], subs[j]);
  }
  PairingAssignment asg;
  for (int i = 0; i < m; ++i)
    asg.triples.push_back({subs[static_cast<std::size_t>(i)], i,
                           perm[static_cast<std::size_t>(i)]});
  return asg;
}

}  // namespace fdnet
