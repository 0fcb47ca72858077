#include "npop/window_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace npop {

double WindowPlot::argmax_fraction(std::size_t strategy) const {
  if (weights.rows == 0) return 0.0;
  std::size_t count = 0;
  for (std::size_t r = 0; r < weights.rows; ++r)
    if (argmax_index(weights.row(r)) == strategy) ++count;
  return static_cast<double>(count) / static_cast<double>(weights.rows);
}

double WindowPlot::weight_range(std::size_t strategy) const {
  double lo = 1.0, hi = 0.0;
  for (std::size_t r = 0; r < weights.rows; ++r) {
    lo = std::min(lo, weights(r, strategy));
    hi = std::max(hi, weights(r, strategy));
  }
  return weights.rows ? hi - lo : 0.0;
}

std::vector<Rgb> palette_for(std::size_t strategies) {
  if (strategies == 4) return {Rgb{0, 255, 0}, Rgb{0, 0, 255}, Rgb{255, 255, 0}, Rgb{255, 0, 0}};
  const std::vector<Rgb> base{Rgb{255, 0, 0},   Rgb{0, 255, 0},   Rgb{0, 0, 255},
                              Rgb{255, 255, 0}, Rgb{255, 0, 255}, Rgb{0, 255, 255}};
  if (strategies < 2 || strategies > base.size())
    throw InvalidInput("window plots support 2 to 6 strategies");
  return {base.begin(), base.begin() + static_cast<std::ptrdiff_t>(strategies)};
}

WindowPlot render_window_plot(const NetworkParams& params, std::size_t resolution) {
  if (params.latent_dim() != 2)
    throw InvalidInput("window plots need a 2-dimensional latent space (got " +
                       std::to_string(params.latent_dim()) + ")");
  if (resolution < 2) throw InvalidInput("window plot resolution must be at least 2");
  const auto palette = palette_for(params.strategies());
  const std::size_t g = resolution;
  const double span = static_cast<double>(g - 1);

  Matrix z(g * g, 2);
  for (std::size_t r = 0; r < g; ++r)
    for (std::size_t c = 0; c < g; ++c) {
      z(r * g + c, 0) = static_cast<double>(c) / span;
      z(r * g + c, 1) = 1.0 - static_cast<double>(r) / span;
    }
  const auto trace = forward(params, Batch(std::move(z)));

  WindowPlot plot{g, trace.output, std::vector<Rgb>(g * g)};
  for (std::size_t p = 0; p < g * g; ++p) {
    const auto w = plot.weights.row(p);
    for (std::size_t ch = 0; ch < 3; ++ch) {
      double v = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) v += w[k] * palette[k][ch];
      plot.pixels[p][ch] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return plot;
}

void write_ppm(std::ostream& out, const WindowPlot& plot) {
  out << "P6\n" << plot.resolution << ' ' << plot.resolution << "\n255\n";
  for (const auto& px : plot.pixels) out.write(reinterpret_cast<const char*>(px.data()), 3);
}

void save_ppm(const std::string& path, const WindowPlot& plot) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write image " + path);
  write_ppm(out, plot);
}

PpmImage read_ppm(std::istream& in) {
  std::string magic;
  int maxval = 0;
  PpmImage img;
  if (!(in >> magic >> img.width >> img.height >> maxval) || magic != "P6" || maxval != 255)
    throw InvalidInput("not an 8-bit binary PPM");
  in.get();  // single whitespace after the header
  img.pixels.resize(img.width * img.height);
  for (auto& px : img.pixels)
    if (!in.read(reinterpret_cast<char*>(px.data()), 3)) throw InvalidInput("truncated PPM data");
  return img;
}

}  // namespace npop
