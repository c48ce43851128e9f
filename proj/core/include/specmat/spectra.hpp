#pragma once

#include <array>
#include <optional>
#include <string>

#include "specmat/model.hpp"

namespace specmat {

/// The spectra the engine evaluates. L and R are the left and right
/// spectra (failure of bounded below resp. surjective), Full their union.
/// LE and RE are the left and right essential spectra (failure of left
/// resp. right Fredholmness), E their union. LW and RW are the left and
/// right Weyl spectra (failure of left resp. right Fredholmness with the
/// favourable index sign), W their union.
enum class SpectrumKind { L, R, Full, LE, RE, E, LW, RW, W };

inline constexpr std::array<SpectrumKind, 9> all_spectrum_kinds = {
    SpectrumKind::L,  SpectrumKind::R,  SpectrumKind::Full,
    SpectrumKind::LE, SpectrumKind::RE, SpectrumKind::E,
    SpectrumKind::LW, SpectrumKind::RW, SpectrumKind::W};

const char* to_string(SpectrumKind k);
std::optional<SpectrumKind> spectrum_kind_from_string(const std::string& s);

/// Pointwise membership of a point with the given shifted-operator data in
/// the spectrum of that kind.
bool in_spectrum(SpectrumKind k, const FredholmData& d);

/// The spectrum of a single catalog operator as an exact region.
RegionExpr spectrum(const Model& m, SpectrumKind k);

/// Points where the shifted operator has dense range.
RegionExpr dense_range_region(const Model& m);

}  // namespace specmat
