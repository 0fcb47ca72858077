#ifndef NPOP_WINDOW_PLOT_HPP
#define NPOP_WINDOW_PLOT_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "npop/matrix.hpp"
#include "npop/network.hpp"

namespace npop {

using Rgb = std::array<std::uint8_t, 3>;

// Church-window plot: the strategy the network assigns to each point of a
// 2-D latent grid. Column c is z0 = c/(g-1); row r is z1 = 1 - r/(g-1), so the
// upper-left pixel is z = (0, 1).
struct WindowPlot {
  std::size_t resolution = 0;
  Matrix weights;           // (g*g) x strategies, row-major over pixels
  std::vector<Rgb> pixels;  // g*g

  // Share of pixels whose largest weight is `strategy`.
  double argmax_fraction(std::size_t strategy) const;
  // max - min of one strategy's weight across all pixels.
  double weight_range(std::size_t strategy) const;
};

// Colors blended linearly by weight. Two strategies map to red/green; four to
// green, blue, yellow, red (All-C, TFT, ATFT, All-D); other counts up to six
// use red, green, blue, yellow, magenta, cyan.
std::vector<Rgb> palette_for(std::size_t strategies);

WindowPlot render_window_plot(const NetworkParams& params, std::size_t resolution);

// Binary PPM (P6).
void write_ppm(std::ostream& out, const WindowPlot& plot);
void save_ppm(const std::string& path, const WindowPlot& plot);
struct PpmImage {
  std::size_t width = 0, height = 0;
  std::vector<Rgb> pixels;
};
PpmImage read_ppm(std::istream& in);

}  // namespace npop

#endif  // NPOP_WINDOW_PLOT_HPP
