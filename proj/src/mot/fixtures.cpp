#include "pkf/mot/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pkf/core/errors.hpp"

namespace pkf::mot {

Sequence pedestrian_sequence(const PedestrianOptions& opts) {
  if (opts.n_tracks < 0 || opts.frames < 0) throw ContractViolation("pedestrian_sequence: negative size");
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  struct Walker {
    double x, y, w, h, vx, vy;
  };
  std::vector<Walker> walkers;
  for (int i = 0; i < opts.n_tracks; ++i) {
    Walker p;
    p.h = 100.0 + 150.0 * unit(rng);
    p.w = 0.41 * p.h;
    p.x = (opts.image_width - p.w) * unit(rng);
    p.y = (opts.image_height - p.h) * unit(rng);
    p.vx = -3.0 + 6.0 * unit(rng);
    p.vy = -1.0 + 2.0 * unit(rng);
    walkers.push_back(p);
  }

  Sequence seq;
  seq.frames = opts.frames;
  std::poisson_distribution<int> false_count(opts.false_per_frame);
  for (int f = 1; f <= opts.frames; ++f) {
    std::vector<Detection>& dets = seq.detections[f];
    for (int i = 0; i < opts.n_tracks; ++i) {
      Walker& p = walkers[static_cast<std::size_t>(i)];
      if (f > 1) {
        p.vx += 0.05 * gauss(rng);
        p.vy += 0.05 * gauss(rng);
        p.x += p.vx;
        p.y += p.vy;
        if (p.x < 0 || p.x + p.w > opts.image_width) {
          p.vx = -p.vx;
          p.x = std::clamp(p.x, 0.0, opts.image_width - p.w);
        }
        if (p.y < 0 || p.y + p.h > opts.image_height) {
          p.vy = -p.vy;
          p.y = std::clamp(p.y, 0.0, opts.image_height - p.h);
        }
      }
      const BBox truth{p.x, p.y, p.w, p.h};
      seq.ground_truth.push_back({f, i + 1, truth, 1.0});
      if (unit(rng) < opts.miss_prob) continue;
      BBox d{truth.left + opts.jitter * gauss(rng), truth.top + opts.jitter * gauss(rng),
             std::max(4.0, truth.width + opts.jitter * gauss(rng)),
             std::max(4.0, truth.height + opts.jitter * gauss(rng))};
      dets.push_back({d, 0.65 + 0.35 * unit(rng), f});
    }
    const int extra = false_count(rng);
    for (int e = 0; e < extra; ++e) {
      const double h = 60.0 + 120.0 * unit(rng);
      const BBox d{(opts.image_width - 0.41 * h) * unit(rng), (opts.image_height - h) * unit(rng), 0.41 * h, h};
      dets.push_back({d, 0.3 + 0.5 * unit(rng), f});
    }
  }
  return seq;
}

Sequence crossing_sequence(const CrossingOptions& o) {
  if (o.frames < 1 || o.cross_frame < 1 || o.window < 0) throw ContractViolation("crossing_sequence: bad options");
  Sequence seq;
  seq.frames = o.frames;
  const double x0 = 400.0;
  const double y0 = 200.0;
  for (int f = 1; f <= o.frames; ++f) {
    const double dt = f - o.cross_frame;
    const BBox a{x0 + o.speed * dt, y0, o.box_width, o.box_height};
    const BBox b{x0 - o.speed * dt, y0 + o.lane_gap, o.box_width, o.box_height};
    seq.ground_truth.push_back({f, 1, a, 1.0});
    seq.ground_truth.push_back({f, 2, b, 1.0});
    BBox da = a;
    BBox db = b;
    if (std::abs(f - o.cross_frame) <= o.window) {
      da.left = std::min(a.left, x0 - 0.5 * o.hold_gap);
      db.left = std::max(b.left, x0 + 0.5 * o.hold_gap);
    }
    seq.detections[f] = {{da, 0.9, f}, {db, 0.9, f}};
  }
  return seq;
}

}  // namespace pkf::mot
