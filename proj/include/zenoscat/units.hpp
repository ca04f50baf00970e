#pragma once

// Central conversion table. Internal units: energy in Kelvin, field in Gauss,
// length in Angstrom, mass in atomic mass units.

namespace zenoscat::units {

// CODATA 2018 exact / recommended values
inline constexpr double planck_h = 6.62607015e-34;       // J s
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double boltzmann = 1.380649e-23;        // J/K
inline constexpr double atomic_mass = 1.66053906660e-27; // kg
inline constexpr double bohr_magneton_si = 9.2740100783e-24; // J/T
inline constexpr double angstrom = 1e-10;                // m
inline constexpr double pi = 3.14159265358979323846;

// Bohr magneton in K/G (1 G = 1e-4 T)
inline constexpr double bohr_magneton = bohr_magneton_si * 1e-4 / boltzmann;

// h * 1 MHz / k_B: energy of a quantum of angular frequency 2*pi*1 MHz.
inline constexpr double mhz = planck_h * 1e6 / boltzmann;
inline constexpr double khz = mhz * 1e-3;
inline constexpr double ghz = mhz * 1e3;

// hbar^2 / (2 amu A^2 k_B) in K. With mu in amu and E in K,
// k^2 [A^-2] = mu * E / hbar2_over_2amu.
inline constexpr double hbar2_over_2amu = hbar * hbar / (2.0 * atomic_mass * angstrom * angstrom * boltzmann);

inline constexpr double cm_inverse = 1.438776877; // K per cm^-1

inline constexpr double microkelvin = 1e-6;
inline constexpr double millikelvin = 1e-3;
inline constexpr double nanokelvin = 1e-9;
inline constexpr double tesla = 1e4; // G

inline double omega_from_mhz(double f_mhz) { return f_mhz * mhz; }
inline double mhz_from_omega(double omega_k) { return omega_k / mhz; }

} // namespace zenoscat::units
