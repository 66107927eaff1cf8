#pragma once

#include "wsa/coherence.hpp"
#include "wsa/cwt.hpp"
#include "wsa/dwt.hpp"
#include "wsa/fourier.hpp"

#include <string>
#include <utility>
#include <vector>

namespace wsa {

/// All emitters return a complete self-contained SVG document. Output is a
/// pure function of the inputs, so fixed data gives byte-identical files.

/// One panel per series: non-DC Fourier coefficients in the complex plane.
std::string svg_scatter(
    const std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>&
        panels);

/// One panel per series: power against frequency with the dominant peak
/// marked and annotated with its period.
std::string svg_periodogram(
    const std::vector<std::pair<std::string, Periodogram>>& panels);

/// One panel per decomposition: approximation and per-level details as
/// stacked traces, finest detail at the bottom.
std::string svg_dwt_levels(
    const std::vector<std::pair<std::string, DwtDecomposition>>& panels);

struct ScalogramPanel {
    std::string label;
    const Scalogram* scalogram = nullptr;
    const CwtField* field = nullptr;
    const ConeOfInfluence* cone = nullptr;
};

/// Percent-energy heat map over (time x scale) with the cone of influence
/// shaded out.
std::string svg_scalogram(const std::vector<ScalogramPanel>& panels);

/// Squared-coherence heat map with the cone of influence shaded and phase
/// arrows at the subsampled cells (angle 0 points right: in phase).
std::string svg_coherence(const CoherenceField& cf, const std::vector<PhaseArrow>& arrows,
                          const std::string& title);

} // namespace wsa
