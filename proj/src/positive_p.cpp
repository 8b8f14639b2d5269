#include "tripsim/positive_p.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "tripsim/criteria.hpp"

namespace tripsim {

namespace {

// Minimal complex value type for the integrator core. std::complex
// multiplication routes through the Annex-G helper on this toolchain; the
// inner loop runs billions of multiplies, so it uses the plain formulas.
struct Cx {
  double re = 0.0, im = 0.0;
};

inline Cx operator+(Cx a, Cx b) { return {a.re + b.re, a.im + b.im}; }
inline Cx operator-(Cx a, Cx b) { return {a.re - b.re, a.im - b.im}; }
inline Cx operator*(Cx a, Cx b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Cx conjc(Cx a) { return {a.re, -a.im}; }
inline Cx scalec(double s, Cx a) { return {s * a.re, s * a.im}; }

// Principal-branch square root.
inline Cx csqrtc(Cx z) {
  const double m = std::sqrt(z.re * z.re + z.im * z.im);
  if (m == 0.0) return {0.0, 0.0};
  if (z.re >= 0.0) {
    const double u = std::sqrt(0.5 * (m + z.re));
    return {u, 0.5 * z.im / u};
  }
  const double v0 = std::sqrt(0.5 * (m - z.re));
  const double v = z.im >= 0.0 ? v0 : -v0;
  return {0.5 * z.im / v, v};
}

struct CoreState {
  Cx a[3], ap[3], b[3], bp[3];
};

// Pump p converts into the signal pair (pair_a[p], pair_b[p]).
constexpr int pair_a[3] = {0, 1, 0};
constexpr int pair_b[3] = {1, 2, 2};

inline void core_drift(const CoreState& s, CoreState& d) {
  d.a[0] = s.b[0] * s.ap[1] + s.b[2] * s.ap[2];
  d.a[1] = s.b[0] * s.ap[0] + s.b[1] * s.ap[2];
  d.a[2] = s.b[1] * s.ap[1] + s.b[2] * s.ap[0];
  d.ap[0] = s.bp[0] * s.a[1] + s.bp[2] * s.a[2];
  d.ap[1] = s.bp[0] * s.a[0] + s.bp[1] * s.a[2];
  d.ap[2] = s.bp[1] * s.a[1] + s.bp[2] * s.a[0];
  for (int p = 0; p < 3; ++p) {
    d.b[p] = scalec(-1.0, s.a[pair_a[p]] * s.a[pair_b[p]]);
    d.bp[p] = scalec(-1.0, s.ap[pair_a[p]] * s.ap[pair_b[p]]);
  }
}

// One noise application computed from the pre-step state: the Wiener
// increment of pump term p lands on one signal directly and on the other as
// its conjugate; the "+" sector draws its own independent increments.
inline void core_add_noise(CoreState& s, double chi, double dt, Philox4x32& rng) {
  const double h = std::sqrt(0.5 * dt);
  for (int p = 0; p < 3; ++p) {
    const int j = pair_a[p], k = pair_b[p];
    const Cx amp = csqrtc(scalec(chi, s.b[p]));
    double z0, z1;
    rng.normal_pair(z0, z1);
    const Cx w{z0 * h, z1 * h};
    s.a[j] = s.a[j] + amp * w;
    s.a[k] = s.a[k] + amp * conjc(w);
    const Cx ampp = csqrtc(scalec(chi, s.bp[p]));
    rng.normal_pair(z0, z1);
    const Cx w2{z0 * h, z1 * h};
    s.ap[j] = s.ap[j] + ampp * w2;
    s.ap[k] = s.ap[k] + ampp * conjc(w2);
  }
}

// Per-trajectory values (and, reused, per-batch sums) of everything the
// criteria need at one grid point: first moments of alpha and alpha+, and
// the X-X / Y-Y quadrature products. Pair order: 00, 11, 22, 01, 02, 12.
struct PPRecord {
  Cx a[3]{}, ap[3]{}, xx[6]{}, yy[6]{};
};

constexpr int rec_i[6] = {0, 1, 2, 0, 0, 1};
constexpr int rec_j[6] = {0, 1, 2, 1, 2, 2};

inline void record_point(const CoreState& s, PPRecord& r) {
  Cx x[3], y[3];
  for (int i = 0; i < 3; ++i) {
    r.a[i] = s.a[i];
    r.ap[i] = s.ap[i];
    x[i] = s.a[i] + s.ap[i];
    const Cx d = s.a[i] - s.ap[i];
    y[i] = {d.im, -d.re};  // -i * d
  }
  for (int m = 0; m < 6; ++m) {
    r.xx[m] = x[rec_i[m]] * x[rec_j[m]];
    r.yy[m] = y[rec_i[m]] * y[rec_j[m]];
  }
}

inline void accumulate(PPRecord& sum, const PPRecord& v) {
  for (int i = 0; i < 3; ++i) {
    sum.a[i] = sum.a[i] + v.a[i];
    sum.ap[i] = sum.ap[i] + v.ap[i];
  }
  for (int m = 0; m < 6; ++m) {
    sum.xx[m] = sum.xx[m] + v.xx[m];
    sum.yy[m] = sum.yy[m] + v.yy[m];
  }
}

inline bool within_bound(const CoreState& s, double bound) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i) {
    m = std::fmax(m, std::fmax(std::fabs(s.a[i].re), std::fabs(s.a[i].im)));
    m = std::fmax(m, std::fmax(std::fabs(s.ap[i].re), std::fabs(s.ap[i].im)));
    m = std::fmax(m, std::fmax(std::fabs(s.b[i].re), std::fabs(s.b[i].im)));
    m = std::fmax(m, std::fmax(std::fabs(s.bp[i].re), std::fabs(s.bp[i].im)));
  }
  return m <= bound;  // false also for NaN
}

void validate(const SimConfig& cfg) {
  if (!(cfg.chi > 0.0)) throw std::invalid_argument("positive-p: chi must be positive");
  if (!(cfg.beta0 > 0.0)) throw std::invalid_argument("positive-p: beta0 must be positive");
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("positive-p: dt must be positive");
  if (!(cfg.zeta_max > 0.0)) throw std::invalid_argument("positive-p: zeta_max must be positive");
  if (cfg.batch_count < 2) throw std::invalid_argument("positive-p: need at least 2 batches");
  if (cfg.n_traj < cfg.batch_count)
    throw std::invalid_argument("positive-p: n_traj must be >= batch_count");
  if (cfg.record_stride < 1) throw std::invalid_argument("positive-p: record_stride must be >= 1");
  if (cfg.threads < 1) throw std::invalid_argument("positive-p: threads must be >= 1");
  if (!(cfg.divergence_factor > 0.0))
    throw std::invalid_argument("positive-p: divergence_factor must be positive");
}

long long record_count(const SimConfig& cfg) {
  const long long steps = std::llround(cfg.zeta_max / cfg.dt);
  const long long n_rec = steps / cfg.record_stride;
  if (n_rec < 1)
    throw std::invalid_argument("positive-p: zeta_max shorter than one recording interval");
  return n_rec;
}

// Integrates one trajectory, filling rec[0 .. n_rec] with the per-point
// values. Returns false as soon as any variable leaves the divergence bound.
bool integrate_one(const SimConfig& cfg, std::uint64_t traj, long long n_rec,
                   std::vector<PPRecord>& rec) {
  CoreState s{};
  for (int i = 0; i < 3; ++i) {
    s.b[i] = {cfg.beta0, 0.0};
    s.bp[i] = {cfg.beta0, 0.0};
  }
  Philox4x32 rng(cfg.seed, traj);
  const double dt_phys = cfg.dt / (cfg.chi * cfg.beta0);
  const double bound = cfg.divergence_factor * cfg.beta0;

  record_point(s, rec[0]);
  for (long long r = 1; r <= n_rec; ++r) {
    for (int step = 0; step < cfg.record_stride; ++step) {
      CoreState d;
      core_drift(s, d);
      CoreState next = s;
      for (int i = 0; i < 3; ++i) {
        next.a[i] = next.a[i] + scalec(cfg.chi * dt_phys, d.a[i]);
        next.ap[i] = next.ap[i] + scalec(cfg.chi * dt_phys, d.ap[i]);
        next.b[i] = next.b[i] + scalec(cfg.chi * dt_phys, d.b[i]);
        next.bp[i] = next.bp[i] + scalec(cfg.chi * dt_phys, d.bp[i]);
      }
      core_add_noise(next, cfg.chi, dt_phys, rng);
      s = next;
      if (!within_bound(s, bound)) return false;
    }
    record_point(s, rec[r]);
  }
  return true;
}

struct BatchAccum {
  std::vector<PPRecord> sums;
  long long n_used = 0;
  long long n_diverged = 0;
};

struct PointStats {
  double v3 = 0.0, epr_one = 0.0, epr_two = 0.0;
  double v12 = 0.0, v13 = 0.0, v23 = 0.0;
  std::array<double, 3> conj_defect{};
};

MomentTable table_from(const PPRecord& s, long long n) {
  const double inv = 1.0 / static_cast<double>(n);
  Cx ma[3], map[3], mx[3], my[3];
  for (int i = 0; i < 3; ++i) {
    ma[i] = scalec(inv, s.a[i]);
    map[i] = scalec(inv, s.ap[i]);
    mx[i] = ma[i] + map[i];
    const Cx d = ma[i] - map[i];
    my[i] = {d.im, -d.re};
  }
  Eigen::Matrix3d vxx = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d vyy = Eigen::Matrix3d::Zero();
  for (int m = 0; m < 6; ++m) {
    const int i = rec_i[m], j = rec_j[m];
    const Cx cxx = scalec(inv, s.xx[m]) - mx[i] * mx[j];
    const Cx cyy = scalec(inv, s.yy[m]) - my[i] * my[j];
    // Normal-ordering correction: trajectory averages are normally ordered,
    // so each single-mode variance gains the +1 commutator term; covariances
    // between distinct modes take none.
    vxx(i, j) = vxx(j, i) = (i == j ? 1.0 : 0.0) + cxx.re;
    vyy(i, j) = vyy(j, i) = (i == j ? 1.0 : 0.0) + cyy.re;
  }
  return MomentTable(vxx, vyy, Eigen::Matrix3d::Zero());
}

PointStats stats_from(const PPRecord& s, long long n) {
  PointStats out;
  const MomentTable t = table_from(s, n);
  const VlfTriplet vlf = vlf_triplet(t);
  out.v12 = vlf.v12;
  out.v13 = vlf.v13;
  out.v23 = vlf.v23;
  out.v3 = (vlf.v12 + vlf.v13 + vlf.v23) / 3.0;
  out.epr_one = epr_one_mode(t, 1, 2, 0, Sign::plus).product;
  out.epr_two = epr_two_mode(t, 0, 1, 2, Sign::plus).product;
  const double inv = 1.0 / static_cast<double>(n);
  for (int i = 0; i < 3; ++i) {
    const Cx d = scalec(inv, s.ap[i]) - conjc(scalec(inv, s.a[i]));
    out.conj_defect[i] = std::sqrt(d.re * d.re + d.im * d.im);
  }
  return out;
}

}  // namespace

PPState pp_drift(const PPState& s, double chi) {
  CoreState c{};
  for (int i = 0; i < 3; ++i) {
    c.a[i] = {s.alpha[i].real(), s.alpha[i].imag()};
    c.ap[i] = {s.alpha_plus[i].real(), s.alpha_plus[i].imag()};
    c.b[i] = {s.beta[i].real(), s.beta[i].imag()};
    c.bp[i] = {s.beta_plus[i].real(), s.beta_plus[i].imag()};
  }
  CoreState d;
  core_drift(c, d);
  PPState out;
  for (int i = 0; i < 3; ++i) {
    out.alpha[i] = {chi * d.a[i].re, chi * d.a[i].im};
    out.alpha_plus[i] = {chi * d.ap[i].re, chi * d.ap[i].im};
    out.beta[i] = {chi * d.b[i].re, chi * d.b[i].im};
    out.beta_plus[i] = {chi * d.bp[i].re, chi * d.bp[i].im};
  }
  return out;
}

void pp_add_noise(PPState& s, double chi, double dt, Philox4x32& rng) {
  CoreState c{};
  for (int i = 0; i < 3; ++i) {
    c.a[i] = {s.alpha[i].real(), s.alpha[i].imag()};
    c.ap[i] = {s.alpha_plus[i].real(), s.alpha_plus[i].imag()};
    c.b[i] = {s.beta[i].real(), s.beta[i].imag()};
    c.bp[i] = {s.beta_plus[i].real(), s.beta_plus[i].imag()};
  }
  core_add_noise(c, chi, dt, rng);
  for (int i = 0; i < 3; ++i) {
    s.alpha[i] = {c.a[i].re, c.a[i].im};
    s.alpha_plus[i] = {c.ap[i].re, c.ap[i].im};
    s.beta[i] = {c.b[i].re, c.b[i].im};
    s.beta_plus[i] = {c.bp[i].re, c.bp[i].im};
  }
}

EnsembleResult run_ensemble(const SimConfig& cfg) {
  validate(cfg);
  const long long n_rec = record_count(cfg);
  const long long n_points = n_rec + 1;
  const int n_batch = cfg.batch_count;

  std::vector<BatchAccum> batches(n_batch);
  for (auto& b : batches) b.sums.assign(n_points, PPRecord{});

  // Batches are contiguous trajectory blocks processed sequentially inside,
  // so the per-batch sums do not depend on which thread ran them.
  std::atomic<int> next_batch{0};
  const auto worker = [&]() {
    std::vector<PPRecord> rec(n_points);
    for (;;) {
      const int b = next_batch.fetch_add(1);
      if (b >= n_batch) break;
      const long long k0 = (static_cast<long long>(b) * cfg.n_traj) / n_batch;
      const long long k1 = (static_cast<long long>(b) + 1) * cfg.n_traj / n_batch;
      for (long long k = k0; k < k1; ++k) {
        if (integrate_one(cfg, static_cast<std::uint64_t>(k), n_rec, rec)) {
          for (long long p = 0; p < n_points; ++p) accumulate(batches[b].sums[p], rec[p]);
          ++batches[b].n_used;
        } else {
          ++batches[b].n_diverged;
        }
      }
    }
  };

  const int n_threads = std::max(1, std::min<int>(cfg.threads, n_batch));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  EnsembleResult result;
  for (const auto& b : batches) {
    result.n_used += b.n_used;
    result.n_diverged += b.n_diverged;
  }
  if (result.n_used == 0)
    throw std::runtime_error("positive-p: all trajectories diverged");

  result.points.resize(n_points);
  result.tables.reserve(n_points);
  result.conj_defect.resize(n_points);
  result.conj_defect_err.resize(n_points);

  for (long long p = 0; p < n_points; ++p) {
    PPRecord pooled{};
    for (const auto& b : batches)
      if (b.n_used > 0) accumulate(pooled, b.sums[p]);

    const PointStats pooled_stats = stats_from(pooled, result.n_used);
    result.tables.push_back(table_from(pooled, result.n_used));

    std::vector<PointStats> per_batch;
    per_batch.reserve(n_batch);
    for (const auto& b : batches)
      if (b.n_used > 0) per_batch.push_back(stats_from(b.sums[p], b.n_used));

    const auto stderr_of = [&](auto&& get) {
      const std::size_t nb = per_batch.size();
      if (nb < 2) return 0.0;
      double mean = 0.0;
      for (const auto& st : per_batch) mean += get(st);
      mean /= static_cast<double>(nb);
      double ss = 0.0;
      for (const auto& st : per_batch) {
        const double d = get(st) - mean;
        ss += d * d;
      }
      return std::sqrt(ss / (static_cast<double>(nb) * (static_cast<double>(nb) - 1.0)));
    };

    PPPoint& pt = result.points[p];
    pt.zeta = static_cast<double>(p) * cfg.record_stride * cfg.dt;
    pt.v3 = pooled_stats.v3;
    pt.epr_one = pooled_stats.epr_one;
    pt.epr_two = pooled_stats.epr_two;
    pt.v3_err = stderr_of([](const PointStats& s) { return s.v3; });
    pt.epr_one_err = stderr_of([](const PointStats& s) { return s.epr_one; });
    pt.epr_two_err = stderr_of([](const PointStats& s) { return s.epr_two; });

    pt.perm_diff = {pooled_stats.v12 - pooled_stats.v13,
                    pooled_stats.v12 - pooled_stats.v23,
                    pooled_stats.v13 - pooled_stats.v23};
    pt.perm_diff_err = {
        stderr_of([](const PointStats& s) { return s.v12 - s.v13; }),
        stderr_of([](const PointStats& s) { return s.v12 - s.v23; }),
        stderr_of([](const PointStats& s) { return s.v13 - s.v23; })};
    pt.epr_four_defect = pooled_stats.epr_one - 4.0 * pooled_stats.epr_two;
    pt.epr_four_defect_err =
        stderr_of([](const PointStats& s) { return s.epr_one - 4.0 * s.epr_two; });

    result.conj_defect[p] = pooled_stats.conj_defect;
    for (int i = 0; i < 3; ++i) {
      result.conj_defect_err[p][i] =
          stderr_of([i](const PointStats& s) { return s.conj_defect[i]; });
    }
  }
  return result;
}

double invariant_drift(const SimConfig& cfg, double alpha0) {
  validate(cfg);
  const long long steps = std::llround(cfg.zeta_max / cfg.dt);
  const double dt_phys = cfg.dt / (cfg.chi * cfg.beta0);

  CoreState s{};
  for (int i = 0; i < 3; ++i) {
    s.a[i] = {alpha0, 0.0};
    s.ap[i] = {alpha0, 0.0};
    s.b[i] = {cfg.beta0, 0.0};
    s.bp[i] = {cfg.beta0, 0.0};
  }
  const auto energy = [&]() {
    double e = 0.0;
    for (int i = 0; i < 3; ++i) {
      e += s.b[i].re * s.b[i].re + s.b[i].im * s.b[i].im;
      e += 0.5 * (s.a[i].re * s.a[i].re + s.a[i].im * s.a[i].im);
    }
    return e;
  };
  const double e0 = energy();
  double max_drift = 0.0;
  for (long long k = 0; k < steps; ++k) {
    CoreState d;
    core_drift(s, d);
    for (int i = 0; i < 3; ++i) {
      s.a[i] = s.a[i] + scalec(cfg.chi * dt_phys, d.a[i]);
      s.ap[i] = s.ap[i] + scalec(cfg.chi * dt_phys, d.ap[i]);
      s.b[i] = s.b[i] + scalec(cfg.chi * dt_phys, d.b[i]);
      s.bp[i] = s.bp[i] + scalec(cfg.chi * dt_phys, d.bp[i]);
    }
    max_drift = std::fmax(max_drift, std::fabs(energy() - e0) / e0);
  }
  return max_drift;
}

}  // namespace tripsim
