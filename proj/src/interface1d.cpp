#include "ng/interface1d.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "ng/rng.hpp"

namespace ng::interface1d {

namespace {

// Solves the 3x3 stationary system Q^T pi = 0, sum pi = 1 by Gaussian
// elimination (last equation replaced by the normalization).
std::array<double, 3> stationary(double r01, double r10, double r12,
                                 double r20, double r21) {
  double m[3][4] = {
      {-r01, r10, r20, 0.0},
      {r01, -(r10 + r12), r21, 0.0},
      {1.0, 1.0, 1.0, 1.0},
  };
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    }
    for (int k = 0; k < 4; ++k) std::swap(m[col][k], m[pivot][k]);
    for (int row = 0; row < 3; ++row) {
      if (row == col) continue;
      const double f = m[row][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[row][k] -= f * m[col][k];
    }
  }
  return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

}  // namespace

InterfaceModel build_model(const FitnessParams& params) {
  const DerivedProbs d = derive(params);
  InterfaceModel model;
  model.r01 = 1.0;
  model.r10 = 2.0 - d.r;
  model.r12 = d.r;
  model.r20 = 1.0;
  model.r21 = 2.0 - d.r;

  // Displacement law, reconstructed from the window dynamics:
  //   type 0: the single (A,B) interface edge fires; A speaks -> the B
  //     becomes bilingual in place, B speaks -> the A becomes bilingual and
  //     the interface retreats one site.
  //   type 1: the (A,AB) edge consumes the bilingual (advance when A wins,
  //     retreat into type 2 when the new bilingual appears to the left);
  //     the (AB,B) edge grows or shrinks the bilingual run.
  //   type 2: the (A,AB) edge as in type 1; the (AB,AB) edge resolves both
  //     bilinguals (advance by two or fall back); the (AB,B) edge either
  //     creates a third bilingual that instantly flips back (self-loop) or
  //     removes the outer bilingual.
  model.displacement_law[0] = {{d.p_ab(), 0, 1}, {d.p_ba(), -1, 1}};
  model.displacement_law[1] = {{1.0 - d.q_B, +1, 0},
                               {1.0 - d.q_A, 0, 0},
                               {d.q_B, -1, 2},
                               {d.q_A, 0, 2}};
  model.displacement_law[2] = {{1.0 - d.q_B, +1, 1}, {1.0 - d.q_A, 0, 1},
                               {d.p_ab(), +2, 0},   {d.p_ba(), 0, 0},
                               {d.q_B, -1, 2},      {d.q_A, 0, 2}};

  model.pi = stationary(model.r01, model.r10, model.r12, model.r20, model.r21);

  for (int j = 0; j < 3; ++j) {
    double dj = 0.0;
    for (const auto& step : model.displacement_law[j]) dj += step.rate * step.dx;
    model.drift[j] = dj;
  }
  model.speed = model.pi[0] * model.drift[0] + model.pi[1] * model.drift[1] +
                model.pi[2] * model.drift[2];
  return model;
}

double speed(const FitnessParams& params) { return build_model(params).speed; }

double critical_quadratic() { return (23.0 + std::sqrt(6097.0)) / 96.0; }

double critical_exact() {
  double lo = 1.0, hi = 3.0;
  if (!(speed(FitnessParams::from_ratio(lo)) < 0.0) ||
      !(speed(FitnessParams::from_ratio(hi)) > 0.0)) {
    throw std::runtime_error("speed does not bracket a root on [1, 3]");
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (speed(FitnessParams::from_ratio(mid)) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Time-weighted occupation and batch-means error bars for a piecewise
// constant (type, x) path on [0, t_max].
class BatchAccumulator {
 public:
  BatchAccumulator(double t_max, int n_batches)
      : t_max_(t_max),
        batch_len_(t_max / n_batches),
        occ_(n_batches, {0.0, 0.0, 0.0}),
        x_at_boundary_(n_batches + 1, 0) {}

  // The path is in `type` at position `x` over [t0, t1).
  void add(double t0, double t1, int type, std::int64_t x) {
    int b = static_cast<int>(t0 / batch_len_);
    double t = t0;
    while (t < t1 && b < static_cast<int>(occ_.size())) {
      const double boundary = (b + 1) * batch_len_;
      const double end = std::min(t1, boundary);
      occ_[b][type] += end - t;
      if (t1 >= boundary) x_at_boundary_[b + 1] = x;
      t = end;
      if (end >= boundary) ++b;
    }
  }

  void finalize(std::int64_t x_final, InterfaceTrajectory& out) const {
    const int k = static_cast<int>(occ_.size());
    for (int j = 0; j < 3; ++j) {
      double mean = 0.0;
      for (const auto& o : occ_) mean += o[j] / batch_len_;
      mean /= k;
      double var = 0.0;
      for (const auto& o : occ_) {
        const double dev = o[j] / batch_len_ - mean;
        var += dev * dev;
      }
      out.occupation[j] = mean;
      out.occupation_se[j] = std::sqrt(var / (k - 1) / k);
    }
    double mean_v = static_cast<double>(x_final - x_at_boundary_[0]) / t_max_;
    double var_v = 0.0;
    for (int b = 0; b < k; ++b) {
      const std::int64_t x1 = (b + 1 == k) ? x_final : x_at_boundary_[b + 1];
      const double v = static_cast<double>(x1 - x_at_boundary_[b]) / batch_len_;
      var_v += (v - mean_v) * (v - mean_v);
    }
    out.empirical_speed = mean_v;
    out.speed_se = std::sqrt(var_v / (k - 1) / k);
  }

 private:
  double t_max_;
  double batch_len_;
  std::vector<std::array<double, 3>> occ_;
  std::vector<std::int64_t> x_at_boundary_;
};

constexpr int kBatches = 100;

}  // namespace

InterfaceTrajectory simulate_interface(const FitnessParams& params,
                                       double t_max, std::uint64_t seed,
                                       double record_stride) {
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  const InterfaceModel model = build_model(params);
  std::array<double, 3> total_rate{};
  for (int j = 0; j < 3; ++j) {
    for (const auto& s : model.displacement_law[j]) total_rate[j] += s.rate;
  }

  rng::Stream stream(seed, 0);
  InterfaceTrajectory out;
  BatchAccumulator batches(t_max, kBatches);

  double t = 0.0;
  std::int64_t x = 0;
  int type = 0;
  double next_sample = 0.0;
  while (t < t_max) {
    const double gap = stream.exponential() / total_rate[type];
    const double t_next = std::min(t + gap, t_max);
    batches.add(t, t_next, type, x);
    if (record_stride > 0.0) {
      while (next_sample <= t_next && next_sample <= t_max) {
        out.samples.push_back({next_sample, x, type});
        next_sample += record_stride;
      }
    }
    t += gap;
    if (t >= t_max) break;
    double pick = stream.uniform() * total_rate[type];
    for (const auto& s : model.displacement_law[type]) {
      pick -= s.rate;
      if (pick < 0.0) {
        x += s.dx;
        type = s.next;
        break;
      }
    }
  }
  out.t_final = t_max;
  out.x_final = x;
  batches.finalize(x, out);
  return out;
}

InterfaceTrajectory simulate_restricted_lattice(const FitnessParams& params,
                                                std::size_t window_half_width,
                                                double t_max,
                                                std::uint64_t seed,
                                                double record_stride) {
  if (window_half_width < 10) {
    throw std::invalid_argument("window_half_width must be at least 10");
  }
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  const DerivedProbs probs = derive(params);

  // states[i] holds the vertex at absolute position origin + i.
  const std::size_t width = 2 * window_half_width + 1;
  std::vector<VertexState> states(width);
  std::int64_t origin = -static_cast<std::int64_t>(window_half_width);
  std::int64_t x = 0;  // interface: all sites <= x are A
  for (std::size_t i = 0; i < width; ++i) {
    states[i] = (origin + static_cast<std::int64_t>(i) <= x) ? VertexState::A
                                                             : VertexState::B;
  }
  const auto cell = [&](std::int64_t pos) -> VertexState& {
    return states[static_cast<std::size_t>(pos - origin)];
  };
  const auto recenter = [&] {
    const std::int64_t target = x - static_cast<std::int64_t>(window_half_width);
    if (target == origin) return;
    std::vector<VertexState> shifted(width);
    for (std::size_t i = 0; i < width; ++i) {
      const std::int64_t pos = target + static_cast<std::int64_t>(i);
      if (pos >= origin && pos < origin + static_cast<std::int64_t>(width)) {
        shifted[i] = cell(pos);
      } else {
        // Outside the old window the configuration is pinned by the
        // restriction: A to the left of the interface, B to the right.
        shifted[i] = pos <= x ? VertexState::A : VertexState::B;
      }
    }
    states = std::move(shifted);
    origin = target;
  };

  const std::size_t n_edges = width - 1;  // edge i joins cells i and i+1
  rng::Stream stream(seed, 0);
  InterfaceTrajectory out;
  BatchAccumulator batches(t_max, kBatches);

  const auto current_type = [&] {
    int ty = 0;
    if (cell(x + 1) == VertexState::AB) {
      ty = cell(x + 2) == VertexState::AB ? 2 : 1;
    }
    return ty;
  };

  double t = 0.0;
  int type = 0;
  double next_sample = 0.0;
  while (t < t_max) {
    const double gap = stream.exponential() / static_cast<double>(n_edges);
    const double t_next = std::min(t + gap, t_max);
    batches.add(t, t_next, type, x);
    if (record_stride > 0.0) {
      while (next_sample <= t_next && next_sample <= t_max) {
        out.samples.push_back({next_sample, x, type});
        next_sample += record_stride;
      }
    }
    t += gap;
    if (t >= t_max) break;

    const std::size_t e = static_cast<std::size_t>(
        (static_cast<unsigned __int128>(stream()) * n_edges) >> 64);
    const double u = stream.uniform();
    VertexState& sx = states[e];
    VertexState& sy = states[e + 1];
    const PairOutcome o = pair_transition(sx, sy, u, probs);
    if (!o.changed(sx, sy)) continue;
    sx = o.new_x;
    sy = o.new_y;

    // Update the interface position locally.
    while (cell(x) != VertexState::A) --x;
    while (cell(x + 1) == VertexState::A) ++x;
    // Restriction rule: a third bilingual at x+3 flips to B instantly.
    if (cell(x + 3) != VertexState::B) cell(x + 3) = VertexState::B;
    type = current_type();

    if (x - origin < 4 ||
        origin + static_cast<std::int64_t>(width) - x < 8) {
      out.aborted = true;  // should be unreachable with recentering
      break;
    }
    if (std::llabs(x - (origin + static_cast<std::int64_t>(window_half_width))) >
        static_cast<std::int64_t>(window_half_width) / 2) {
      recenter();
    }
  }
  out.t_final = t;
  out.x_final = x;
  batches.finalize(x, out);
  return out;
}

}  // namespace ng::interface1d
