// Physical constants (CODATA 2010) and unit conversions.
#ifndef TBWE_CONSTANTS_HPP
#define TBWE_CONSTANTS_HPP

namespace tbwe::constants {

// fine structure constant
inline constexpr double kAlphaEM = 0.0072973525698;

// unified atomic mass unit in MeV
inline constexpr double kAmuMeV = 931.494061;

// hbar*c in MeV*fm
inline constexpr double kHbarC_MeVfm = 197.3269718;

// 1 MeV expressed as a frequency (E/h) in MHz, and in meV
inline constexpr double kMeVToMHz = 2.417989348e14;
inline constexpr double kMeVTomeV = 1.0e9;

// particle masses in unified atomic mass units (CODATA 2010)
inline constexpr double kMassElectronU = 5.485799091e-4;
inline constexpr double kMassProtonU = 1.007276466879;
inline constexpr double kMassMuonU = 0.1134289267;
inline constexpr double kMassHelion3U = 3.0160293;

// magnetic moment factors kappa = g/2
inline constexpr double kKappaProton = 2.7928473565;
inline constexpr double kKappaElectron = 1.0011596522;
inline constexpr double kKappaMuon = 1.0011659207;
// helion: from kappa_p, the helion/proton mass ratio and the shielded
// helion-to-proton magnetic moment ratio (CODATA 2010); negative moment
inline constexpr double kKappaHelion3 = -3.1839627379413;

inline double gev_per_fm_to_mev2(double s) { return s * 1000.0 * kHbarC_MeVfm; }

}  // namespace tbwe::constants

#endif
