#include "photonpair/wigner_numerics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace photonpair::wigner_numerics {

namespace {

using Complex = std::complex<double>;

// RAII wrapper around a 1-D complex FFTW plan with its buffer.
class Fft1d {
 public:
  explicit Fft1d(int size, int sign) : size_(size) {
    buf_ = static_cast<fftw_complex*>(
        fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(size)));
    plan_ = fftw_plan_dft_1d(size, buf_, buf_, sign, FFTW_ESTIMATE);
  }
  ~Fft1d() {
    fftw_destroy_plan(plan_);
    fftw_free(buf_);
  }
  Fft1d(const Fft1d&) = delete;
  Fft1d& operator=(const Fft1d&) = delete;

  Complex* data() { return reinterpret_cast<Complex*>(buf_); }
  void execute() { fftw_execute(plan_); }
  int size() const { return size_; }

 private:
  int size_;
  fftw_complex* buf_;
  fftw_plan plan_;
};

}  // namespace

HeraldedDensityMatrix heralded_density_matrix(const JointSpectralAmplitude& jsa,
                                              const FilterSpec& trigger) {
  trigger.validate();
  const int n = jsa.grid.size;
  HeraldedDensityMatrix rho;
  rho.grid = jsa.grid;
  rho.trigger_filtered = trigger.sigma_g.has_value();

  if (!trigger.sigma_g) {
    rho.values.noalias() =
        jsa.values * jsa.values.adjoint() * jsa.grid.spacing;
  } else {
    Eigen::VectorXd g(n);
    const double sg = *trigger.sigma_g;
    for (int m = 0; m < n; ++m) {
      const double d = (jsa.grid.value(m) - trigger.omega_g0) / sg;
      g(m) = std::exp(-d * d);
    }
    rho.values.noalias() = jsa.values * g.asDiagonal() *
                           jsa.values.adjoint() * jsa.grid.spacing;
  }

  const double tr = rho.values.trace().real() * jsa.grid.spacing;
  if (!(tr > 1e-300))
    throw EmptyHeraldingError(
        "trigger filter has no overlap with the grid: heralded trace "
        "vanished");
  rho.values /= tr;
  return rho;
}

ChronocyclicWigner numerical_cwf(const HeraldedDensityMatrix& rho,
                                 const CwfOptions& options) {
  const int n = rho.grid.size;
  const double spacing = rho.grid.spacing;
  int m_len = n * std::max(1, options.time_oversampling);
  m_len = std::min(m_len, 1 << 14);

  ChronocyclicWigner w;
  w.omega_axis = rho.grid.axis();
  w.time_axis.resize(static_cast<std::size_t>(m_len));
  const double t_step = kPi / (m_len * spacing);
  for (int l = 0; l < m_len; ++l)
    w.time_axis[static_cast<std::size_t>(l)] = (l - m_len / 2) * t_step;
  w.values.resize(n, m_len);

  Fft1d fft(m_len, FFTW_BACKWARD);
  double max_im = 0, max_re = 0;
  for (int j = 0; j < n; ++j) {
    Complex* buf = fft.data();
    std::fill(buf, buf + m_len, Complex(0, 0));
    const int mm = std::min(j, n - 1 - j);
    for (int m = -mm; m <= mm; ++m)
      buf[(m + m_len) % m_len] = rho.values(j + m, j - m);
    fft.execute();
    // fftshift so the time axis is monotone.
    for (int l = 0; l < m_len; ++l) {
      const Complex v = buf[(l + m_len / 2) % m_len];
      max_im = std::max(max_im, std::abs(v.imag()));
      max_re = std::max(max_re, std::abs(v.real()));
      w.values(j, l) = v.real() * spacing / kPi;
    }
  }
  if (max_im > 1e-10 * max_re)
    throw Error("Wigner transform has a non-negligible imaginary residue; "
                "the density matrix is not Hermitian enough");
  return w;
}

Marginals marginals(const ChronocyclicWigner& w) {
  Marginals m;
  m.spectral.axis = w.omega_axis;
  m.temporal.axis = w.time_axis;
  const Eigen::VectorXd over_t = w.values.rowwise().sum() * w.time_spacing();
  const Eigen::VectorXd over_w = w.values.colwise().sum() * w.omega_spacing();
  m.spectral.density.assign(over_t.data(), over_t.data() + over_t.size());
  m.temporal.density.assign(over_w.data(), over_w.data() + over_w.size());
  m.spectral.normalize();
  m.temporal.normalize();
  return m;
}

WidthMeasurement measure_width(const IntensityProfile& profile, double level) {
  const auto& y = profile.density;
  const auto& x = profile.axis;
  if (y.size() < 3) throw DegenerateProfileError("profile has too few samples");
  const auto it_max = std::max_element(y.begin(), y.end());
  const std::size_t imax =
      static_cast<std::size_t>(std::distance(y.begin(), it_max));
  if (imax == 0 || imax == y.size() - 1)
    throw ClippedProfileError("profile maximum sits at the grid edge");
  const double threshold = *it_max * level;
  if (y.front() >= threshold || y.back() >= threshold)
    throw ClippedProfileError(
        "profile does not fall below the width level inside the grid");

  // Outermost crossings: first from the left, last from the right.
  std::size_t il = 0;
  while (y[il] < threshold) ++il;
  std::size_t ir = y.size() - 1;
  while (y[ir] < threshold) --ir;
  if (il == 0 || ir == y.size() - 1)
    throw ClippedProfileError("width crossing at the grid edge");

  auto interp = [&](std::size_t lo, std::size_t hi) {
    const double frac = (threshold - y[lo]) / (y[hi] - y[lo]);
    return x[lo] + frac * (x[hi] - x[lo]);
  };
  WidthMeasurement wm;
  wm.level = level;
  wm.left_crossing = interp(il - 1, il);
  wm.right_crossing = interp(ir + 1, ir);
  wm.half_width = 0.5 * (wm.right_crossing - wm.left_crossing);
  if (!(wm.half_width > 0))
    throw DegenerateProfileError("profile width collapsed to zero");
  return wm;
}

namespace {

// Marching squares.  Cells are indexed by their lower corner (i, j) in
// (omega, time); segment endpoints live on cell edges and are keyed by
// (i, j, horizontal?) so neighboring cells share keys.
struct EdgeKey {
  int i, j;
  bool horizontal;
  auto operator<=>(const EdgeKey&) const = default;
};

struct Segment {
  EdgeKey a, b;
};

}  // namespace

std::vector<Contour> contour_e1(const ChronocyclicWigner& w, double level) {
  const double wmax = w.values.maxCoeff();
  if (!(wmax > 0)) throw Error("contour level set of a non-positive surface");
  const double threshold = level * wmax;
  const int ni = static_cast<int>(w.omega_axis.size());
  const int nj = static_cast<int>(w.time_axis.size());

  auto edge_point = [&](const EdgeKey& e) -> ContourPoint {
    // Interpolate the crossing along the edge.
    const double v0 = w.values(e.i, e.j);
    if (e.horizontal) {
      const double v1 = w.values(e.i + 1, e.j);
      const double f = (threshold - v0) / (v1 - v0);
      return {w.omega_axis[static_cast<std::size_t>(e.i)] +
                  f * (w.omega_axis[static_cast<std::size_t>(e.i + 1)] -
                       w.omega_axis[static_cast<std::size_t>(e.i)]),
              w.time_axis[static_cast<std::size_t>(e.j)]};
    }
    const double v1 = w.values(e.i, e.j + 1);
    const double f = (threshold - v0) / (v1 - v0);
    return {w.omega_axis[static_cast<std::size_t>(e.i)],
            w.time_axis[static_cast<std::size_t>(e.j)] +
                f * (w.time_axis[static_cast<std::size_t>(e.j + 1)] -
                     w.time_axis[static_cast<std::size_t>(e.j)])};
  };

  std::vector<Segment> segments;
  for (int i = 0; i + 1 < ni; ++i) {
    for (int j = 0; j + 1 < nj; ++j) {
      const bool b00 = w.values(i, j) >= threshold;
      const bool b10 = w.values(i + 1, j) >= threshold;
      const bool b01 = w.values(i, j + 1) >= threshold;
      const bool b11 = w.values(i + 1, j + 1) >= threshold;
      const int code = (b00 ? 1 : 0) | (b10 ? 2 : 0) | (b11 ? 4 : 0) |
                       (b01 ? 8 : 0);
      if (code == 0 || code == 15) continue;
      const EdgeKey bottom{i, j, true};        // (i,j)-(i+1,j)
      const EdgeKey top{i, j + 1, true};       // (i,j+1)-(i+1,j+1)
      const EdgeKey left{i, j, false};         // (i,j)-(i,j+1)
      const EdgeKey right{i + 1, j, false};    // (i+1,j)-(i+1,j+1)
      auto add = [&](EdgeKey a, EdgeKey b) { segments.push_back({a, b}); };
      switch (code) {
        case 1: case 14: add(bottom, left); break;
        case 2: case 13: add(bottom, right); break;
        case 4: case 11: add(right, top); break;
        case 8: case 7:  add(left, top); break;
        case 3: case 12: add(left, right); break;
        case 6: case 9:  add(bottom, top); break;
        case 5: case 10: {
          // Saddle: split by the cell-center value.
          const double center = 0.25 * (w.values(i, j) + w.values(i + 1, j) +
                                        w.values(i, j + 1) +
                                        w.values(i + 1, j + 1));
          const bool center_in = center >= threshold;
          if ((code == 5) == center_in) {
            add(bottom, right);
            add(left, top);
          } else {
            add(bottom, left);
            add(right, top);
          }
          break;
        }
        default: break;
      }
    }
  }
  if (segments.empty()) throw Error("empty contour at the requested level");

  // Stitch segments into chains via shared edge keys.
  std::multimap<EdgeKey, std::size_t> by_edge;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    by_edge.emplace(segments[s].a, s);
    by_edge.emplace(segments[s].b, s);
  }
  std::vector<bool> used(segments.size(), false);
  std::vector<Contour> contours;
  for (std::size_t s0 = 0; s0 < segments.size(); ++s0) {
    if (used[s0]) continue;
    std::vector<EdgeKey> chain{segments[s0].a, segments[s0].b};
    used[s0] = true;
    bool extended = true;
    while (extended && chain.front() != chain.back()) {
      extended = false;
      const EdgeKey tail = chain.back();
      auto [lo, hi] = by_edge.equal_range(tail);
      for (auto it = lo; it != hi; ++it) {
        const std::size_t s = it->second;
        if (used[s]) continue;
        chain.push_back(segments[s].a == tail ? segments[s].b
                                              : segments[s].a);
        used[s] = true;
        extended = true;
        break;
      }
    }
    Contour c;
    c.reserve(chain.size());
    for (const auto& e : chain) c.push_back(edge_point(e));
    contours.push_back(std::move(c));
  }
  // Largest contours first.
  std::sort(contours.begin(), contours.end(),
            [](const Contour& a, const Contour& b) {
              return a.size() > b.size();
            });
  return contours;
}

double contour_area(const Contour& c) {
  double area = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    area += c[i].omega * c[i + 1].t - c[i + 1].omega * c[i].t;
  return 0.5 * std::abs(area);
}

JointTemporalResult joint_temporal_analysis(const JointSpectralAmplitude& jsa) {
  const int n = jsa.grid.size;
  const double spacing = jsa.grid.spacing;
  // Zero-pad the 2-D transform when affordable; halves the t_- step.
  const int p = n <= 1024 ? 2 * n : n;

  fftw_complex* buf = static_cast<fftw_complex*>(fftw_malloc(
      sizeof(fftw_complex) * static_cast<std::size_t>(p) * p));
  auto* data = reinterpret_cast<Complex*>(buf);
  std::fill(data, data + static_cast<std::size_t>(p) * p, Complex(0, 0));
  // Row-major layout for FFTW.
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      data[static_cast<std::size_t>(j) * p + k] = jsa.values(j, k);
  fftw_plan plan = fftw_plan_dft_2d(p, p, buf, buf, FFTW_BACKWARD,
                                    FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  // t indices: raw index a corresponds to t = a * dt for a < p/2 and
  // (a - p) * dt above; antidiagonal sums need the unwrapped offset.
  const double dt = 2.0 * kPi / (p * spacing);
  std::vector<double> s_minus(static_cast<std::size_t>(2 * p - 1), 0.0);
  for (int a = 0; a < p; ++a) {
    const int ta = a < p / 2 ? a : a - p;
    for (int b = 0; b < p; ++b) {
      const int tb = b < p / 2 ? b : b - p;
      const Complex v = data[static_cast<std::size_t>(a) * p + b];
      const double inten = std::norm(v);
      s_minus[static_cast<std::size_t>(ta - tb + p - 1)] += inten;
    }
  }
  fftw_free(buf);

  JointTemporalResult result;
  result.s_minus.axis.resize(s_minus.size());
  result.s_minus.density = std::move(s_minus);
  for (std::size_t d = 0; d < result.s_minus.axis.size(); ++d)
    result.s_minus.axis[d] =
        (static_cast<int>(d) - (p - 1)) * dt;
  result.s_minus.normalize();
  result.tau_c_fs = measure_width(result.s_minus).half_width;
  return result;
}

}  // namespace photonpair::wigner_numerics
