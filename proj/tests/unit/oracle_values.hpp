#pragma once

// Values produced by tests/oracles/closed_forms.py (mpmath, 40 digits) from
// CODATA 2018 constants and closed-form integrals. Frozen here so the C++
// tests do not depend on Python at run time.

namespace oracle {

inline constexpr double rest_energy_eV = 510998.94999616415;
inline constexpr double f0_Hz = 1.2355899638074140e20;
inline constexpr double guide_width_electron_m = 1.2131551193415462e-12;
inline constexpr double guide_width_muon_m = 5.8673190716863117e-15;
inline constexpr double e2_coulomb = 2.3070775523417363e-28;
inline constexpr double alpha = 7.2973525692780337e-3;
inline constexpr double bohr_radius_m = 5.2917721090608530e-11;
inline constexpr double bohr_energy_eV = -13.605693122885843;
inline constexpr double tau_over_T_N1 = 5.3254190378120239e-5;
inline constexpr double nonrel_gap_N1 = 2.6626740697400036e-5;

inline constexpr double sech_norm = 2.0;
inline constexpr double sech_rms = 0.90689968211710893;  // pi / (2 sqrt 3)
inline constexpr double sech_linear_width_ratio_t5 = 3.3364829333047363;
inline constexpr double sech_linear_width_ratio_t10 = 6.4442589532804397;

struct BarrierCase {
  double E, V0, L, T;
};
// hbar = m = 1
inline constexpr BarrierCase barrier_cases[] = {
    {0.5, 1.0, 1.0, 0.41997434161402607},
    {1.0, 1.0, 1.0, 2.0 / 3.0},
    {2.0, 1.0, 1.0, 0.89129721714177295},
    {0.3, 1.0, 2.0, 0.029220113233972770},
    {1.5, 1.0, 2.5, 0.89334398680984458},
};

}  // namespace oracle
