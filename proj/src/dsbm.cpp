#include "hermclust/dsbm.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "hermclust/random.hpp"

namespace hermclust {

namespace {

constexpr std::uint64_t kEdgeStream = 0xd5b0e;
constexpr std::uint64_t kDirectionStream = 0xd5b0d;

// Continued fraction for the regularized incomplete beta function.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return h;
}

double regularized_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, 1.0 - x) / b;
}

// Smallest p in [0, 1] with f(p) >= target for increasing f, by bisection.
template <typename F>
double bisect_increasing(F f, double target) {
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= target ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

void count(BinomialEstimate& est, bool success) {
  ++est.trials;
  if (success) ++est.successes;
}

void finish(BinomialEstimate& est, double expected, double confidence) {
  est.expected = expected;
  est.frequency = est.trials ? static_cast<double>(est.successes) / static_cast<double>(est.trials) : 0.0;
  std::tie(est.ci_low, est.ci_high) = clopper_pearson(est.successes, est.trials, confidence);
}

}  // namespace

void DsbmParams::validate() const {
  if (k < 1) throw InputError("DSBM needs k >= 1");
  if (n < k || n % k != 0)
    throw InputError("DSBM needs k to divide n (n = " + std::to_string(n) + ", k = " + std::to_string(k) + ")");
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) throw InputError("DSBM needs 0 <= p, q <= 1");
  if (!(eta >= 0.5 && eta <= 1.0)) throw InputError("DSBM needs 0.5 <= eta <= 1");
}

DsbmInstance generate(const DsbmParams& params) {
  params.validate();
  const Index n = params.n;
  const Index block = n / params.k;
  std::vector<Edge> edges;
  for (Index u = 0; u < n; ++u) {
    const Index bu = u / block;
    for (Index v = u + 1; v < n; ++v) {
      const Index bv = v / block;
      const auto pair = static_cast<std::uint64_t>(u * n + v);
      double prob = 0.0;
      double forward = 0.5;  // probability of u -> v
      if (bu == bv) {
        prob = params.p;
      } else if (bv == bu + 1) {
        prob = params.q;
        forward = params.eta;
      } else if (params.variant == DsbmVariant::all_pairs) {
        prob = params.q;
      }
      if (prob == 0.0 || counter_uniform(params.seed, kEdgeStream, pair) >= prob) continue;
      if (counter_uniform(params.seed, kDirectionStream, pair) < forward) {
        edges.push_back({u, v, 1.0});
      } else {
        edges.push_back({v, u, 1.0});
      }
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.src, a.dst) < std::pair(b.src, b.dst); });
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (Index u = 0; u < n; ++u) labels[static_cast<std::size_t>(u)] = params.k - 1 - static_cast<int>(u / block);
  return {WeightedDigraph(n, std::move(edges)), Partition(std::move(labels), params.k)};
}

bool BinomialEstimate::within_three_sigma() const {
  if (trials == 0) return true;
  const double sigma = std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));
  return std::abs(frequency - expected) <= 3.0 * sigma;
}

std::pair<double, double> clopper_pearson(Index successes, Index trials, double confidence) {
  if (trials <= 0) return {0.0, 1.0};
  const double tail = 0.5 * (1.0 - confidence);
  const auto x = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  // P(X >= x | p) = I_p(x, n - x + 1) grows with p; P(X <= x | p) shrinks.
  const double low = successes == 0 ? 0.0
                                     : bisect_increasing([&](double p) { return regularized_beta(x, n - x + 1.0, p); }, tail);
  const double high = successes == trials
                          ? 1.0
                          : bisect_increasing([&](double p) { return regularized_beta(x + 1.0, n - x, p); },
                                              1.0 - tail);
  return {low, high};
}

DsbmStatistics empirical_check(const DsbmParams& params, int trials, double confidence) {
  params.validate();
  DsbmStatistics s;
  const Index block = params.n / params.k;
  for (int t = 0; t < trials; ++t) {
    DsbmParams trial = params;
    trial.seed = params.seed + static_cast<std::uint64_t>(t);
    const auto inst = generate(trial);
    const auto& g = inst.graph;
    for (Index u = 0; u < params.n; ++u) {
      for (Index v = u + 1; v < params.n; ++v) {
        const Index bu = u / block;
        const Index bv = v / block;
        const double fwd = g.weight(u, v);
        const double bwd = g.weight(v, u);
        const bool has = fwd > 0.0 || bwd > 0.0;
        if (bu == bv) {
          count(s.intra_edges, has);
          if (has) count(s.intra_forward, fwd > 0.0);
        } else if (bv == bu + 1) {
          count(s.consecutive_edges, has);
          if (has) count(s.consecutive_forward, fwd > 0.0);
        } else {
          count(s.distant_edges, has);
          if (has) count(s.distant_forward, fwd > 0.0);
        }
      }
    }
  }
  finish(s.intra_edges, params.p, confidence);
  finish(s.intra_forward, 0.5, confidence);
  finish(s.consecutive_edges, params.q, confidence);
  finish(s.consecutive_forward, params.eta, confidence);
  finish(s.distant_edges, params.variant == DsbmVariant::all_pairs ? params.q : 0.0, confidence);
  finish(s.distant_forward, 0.5, confidence);
  return s;
}

}  // namespace hermclust
