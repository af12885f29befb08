#include "semsec/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "semsec/errors.hpp"

namespace semsec::cli {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 110, kTop = 40, kBottom = 55;

// Viridis anchors.
constexpr std::array<std::array<double, 3>, 5> kRamp{{{68, 1, 84},
                                                      {59, 82, 139},
                                                      {33, 145, 140},
                                                      {94, 201, 98},
                                                      {253, 231, 37}}};

std::string color(double t) {
  t = std::clamp(t, 0.0, 1.0) * (kRamp.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), kRamp.size() - 2);
  const double f = t - static_cast<double>(i);
  auto ch = [&](int c) { return static_cast<int>(std::lround(kRamp[i][c] + f * (kRamp[i + 1][c] - kRamp[i][c]))); };
  return fmt::format("#{:02x}{:02x}{:02x}", ch(0), ch(1), ch(2));
}

std::string num(double v) { return fmt::format("{:.2f}", v); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Cell edges: midpoints between neighbours, half-steps at the ends.
std::vector<double> edges(const std::vector<double>& v) {
  std::vector<double> e(v.size() + 1);
  if (v.size() == 1) {
    e[0] = v[0] - 0.5;
    e[1] = v[0] + 0.5;
    return e;
  }
  for (std::size_t i = 1; i < v.size(); ++i) e[i] = 0.5 * (v[i - 1] + v[i]);
  e[0] = v[0] - (e[1] - v[0]);
  e[v.size()] = v.back() + (v.back() - e[v.size() - 1]);
  return e;
}

}  // namespace

std::vector<std::array<double, 4>> contour_segments(const Heatmap& h, double level) {
  std::vector<std::array<double, 4>> segs;
  const std::size_t nx = h.x.size(), ny = h.y.size();
  if (nx < 2 || ny < 2) return segs;
  auto z = [&](std::size_t i, std::size_t j) { return h.z[i * ny + j]; };
  for (std::size_t i = 0; i + 1 < nx; ++i)
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      // Corners counter-clockwise from (i, j).
      const std::array<double, 4> v{z(i, j), z(i + 1, j), z(i + 1, j + 1), z(i, j + 1)};
      const std::array<double, 4> cx{h.x[i], h.x[i + 1], h.x[i + 1], h.x[i]};
      const std::array<double, 4> cy{h.y[j], h.y[j], h.y[j + 1], h.y[j + 1]};
      if (std::any_of(v.begin(), v.end(), [](double a) { return std::isnan(a); })) continue;
      int mask = 0;
      for (int k = 0; k < 4; ++k)
        if (v[k] >= level) mask |= 1 << k;
      if (mask == 0 || mask == 15) continue;
      auto point = [&](int e) {
        const int a = e, b = (e + 1) % 4;
        const double t = (level - v[a]) / (v[b] - v[a]);
        return std::array<double, 2>{cx[a] + t * (cx[b] - cx[a]), cy[a] + t * (cy[b] - cy[a])};
      };
      auto emit = [&](int e0, int e1) {
        const auto p = point(e0), q = point(e1);
        segs.push_back({p[0], p[1], q[0], q[1]});
      };
      // Edge k joins corner k and k+1.
      std::vector<int> crossed;
      for (int e = 0; e < 4; ++e)
        if (((mask >> e) & 1) != ((mask >> ((e + 1) % 4)) & 1)) crossed.push_back(e);
      if (crossed.size() == 2) {
        emit(crossed[0], crossed[1]);
      } else {
        // Saddle: decide by the cell-centre average.
        const bool centre_high = 0.25 * (v[0] + v[1] + v[2] + v[3]) >= level;
        const bool c0_high = mask & 1;
        if (centre_high == c0_high) {
          emit(0, 1);
          emit(2, 3);
        } else {
          emit(3, 0);
          emit(1, 2);
        }
      }
    }
  return segs;
}

std::string render_svg(const Heatmap& h) {
  const std::size_t nx = h.x.size(), ny = h.y.size();
  if (nx == 0 || ny == 0 || h.z.size() != nx * ny) throw ConfigError("heatmap dimensions do not match");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : h.z)
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  const bool any = std::isfinite(lo);
  if (!any) lo = 0.0, hi = 1.0;
  if (hi <= lo) hi = lo + 1.0;

  const auto ex = edges(h.x), ey = edges(h.y);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - ex.front()) / (ex.back() - ex.front()) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - ey.front()) / (ey.back() - ey.front()) * ph; };

  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight, kWidth, kHeight);
  s += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  s += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                   num(kLeft + pw / 2), escape(h.title));

  s += "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      const double v = h.z[i * ny + j];
      const std::string fill = std::isfinite(v) ? color((v - lo) / (hi - lo)) : std::string("#bbbbbb");
      s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n", num(px(ex[i])),
                       num(py(ey[j + 1])), num(px(ex[i + 1]) - px(ex[i])), num(py(ey[j]) - py(ey[j + 1])),
                       fill);
    }
  s += "</g>\n";

  if (any && h.contour_levels > 0) {
    s += "<g fill=\"none\" stroke=\"white\" stroke-width=\"1\">\n";
    for (int k = 1; k <= h.contour_levels; ++k) {
      const double level = lo + (hi - lo) * k / (h.contour_levels + 1);
      const auto segs = contour_segments(h, level);
      if (segs.empty()) continue;
      std::string d;
      for (const auto& g : segs)
        d += fmt::format("M{} {}L{} {}", num(px(g[0])), num(py(g[1])), num(px(g[2])), num(py(g[3])));
      s += fmt::format("<path data-level=\"{:.6g}\" d=\"{}\"/>\n", level, d);
    }
    s += "</g>\n";
  }

  // Axes and ticks.
  s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                   num(kLeft), num(kTop), num(pw), num(ph));
  auto ticks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx;
    const std::size_t step = std::max<std::size_t>(1, (v.size() + 5) / 6);
    for (std::size_t i = 0; i < v.size(); i += step) idx.push_back(i);
    if (idx.back() != v.size() - 1) idx.push_back(v.size() - 1);
    return idx;
  };
  for (auto i : ticks(h.x))
    s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.3g}</text>\n", num(px(h.x[i])),
                     num(kTop + ph + 16), h.x[i]);
  for (auto j : ticks(h.y))
    s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3g}</text>\n", num(kLeft - 6),
                     num(py(h.y[j]) + 4), h.y[j]);
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", num(kLeft + pw / 2),
                   num(kHeight - 12), escape(h.x_label));
  s += fmt::format("<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
                   num(kTop + ph / 2), num(kTop + ph / 2), escape(h.y_label));

  // Colour bar.
  const double bx = kWidth - kRight + 20, bw = 16;
  constexpr int kSteps = 64;
  for (int k = 0; k < kSteps; ++k) {
    const double t = (k + 0.5) / kSteps;
    s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n", num(bx),
                     num(kTop + ph * (1.0 - (k + 1.0) / kSteps)), num(bw), num(ph / kSteps + 0.5), color(t));
  }
  s += fmt::format("<text x=\"{}\" y=\"{}\">{:.4g}</text>\n", num(bx + bw + 4), num(kTop + 10), hi);
  s += fmt::format("<text x=\"{}\" y=\"{}\">{:.4g}</text>\n", num(bx + bw + 4), num(kTop + ph), lo);
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", num(bx + bw / 2),
                   num(kTop + ph + 16), escape(h.z_label));
  s += "</svg>\n";
  return s;
}

}  // namespace semsec::cli
