#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpm/execution.hpp"
#include "rpm/instance.hpp"

namespace rpm {

struct PanelRaster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // 0 = black stroke, 255 = background

    bool operator==(const PanelRaster&) const = default;
};

struct RenderOptions {
    int width = 160;
    int height = 160;
    bool rotate = false;               // render-only noise, never rule-bearing
    std::uint64_t rotation_seed = 0;   // per-slot angles when rotate is set
};

// Integer rasterization only: byte-reproducible across runs and platforms.
PanelRaster render_panel(const PanelSymbol& panel, const Configuration& config,
                         const AttributeDomain& domain, const RenderOptions& options = {});

// Samples a concrete symbol from the predicted scene (position subset first,
// then the scalar axes) and renders it.
std::pair<PanelSymbol, PanelRaster> sample_and_render(const PredictedScene& pred,
                                                      const Configuration& config,
                                                      const AttributeDomain& domain,
                                                      std::uint64_t seed,
                                                      const RenderOptions& options = {});

PanelSymbol sample_symbol(const PredictedScene& pred, std::uint64_t seed);

std::string to_pgm(const PanelRaster& raster);  // binary PGM (P5)
std::string to_svg(const PanelSymbol& panel, const Configuration& config,
                   const AttributeDomain& domain, const RenderOptions& options = {});

void write_file(const std::string& path, const std::string& bytes);

}  // namespace rpm
