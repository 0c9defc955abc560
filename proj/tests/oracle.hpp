#pragma once

// Reference values computed offline with mpmath at 40 significant digits
// (ncdf, erfinv, loggamma, quad). Kept as literals so the tests do not share
// code paths with the library.

namespace oracle {

inline constexpr double kPhiMinus38 = 2.8854283600687843e-316;
inline constexpr double kPhiMinus10 = 7.6198530241605261e-24;
inline constexpr double kPhiMinus5 = 2.8665157187919391e-7;
inline constexpr double kPhiMinus1p5 = 0.066807201268858066;
inline constexpr double kPhi0p5 = 0.6914624612740131;
inline constexpr double kPhi1p96 = 0.97500210485177956;
inline constexpr double kPhi3 = 0.99865010196836991;

inline constexpr double kZ0p3 = -0.52440051270804082;
inline constexpr double kZ0p9 = 1.2815515655446006;
inline constexpr double kZ0p975 = 1.9599639845400539;
inline constexpr double kZ1em10 = -6.3613409024040562;

inline constexpr double kLogGamma0p1 = 2.2527126517342059;
inline constexpr double kLogGamma2p5 = 0.28468287047291916;
inline constexpr double kLogGamma7p3 = 7.1478925230222487;
inline constexpr double kLogGamma14p9 = 24.924132002217278;
inline constexpr double kLogGamma15 = 25.191221182738682;
inline constexpr double kLogGamma150p5 = 602.51395487058541;
inline constexpr double kLogGamma1e6 = 12815504.569147612;

inline constexpr double kLogBeta2p5_3p5 = -3.3018352699620526;
inline constexpr double kLogBeta0p3_40 = -0.0082365242733420394;
inline constexpr double kLogBetaStone = -264989.18761649825;  // (106299, 420838)

inline constexpr double kBinomBfStone = 8.11485360041797;  // n=527135 x=106298 theta0=0.2
inline constexpr double kBinomBf10_2 = 3.321888768;
inline constexpr double kBinomBf1000_220 = 8.9933150712955;
inline constexpr double kBinomBf50_30 = 2.13481661188016;  // theta0=0.5

// theta0=0.3 sigma=2 n=40 tau=1.5 xbar=0.9
inline constexpr double kConjugateBf = 0.86510530052867776;

// theta0=0 sigma=1 n=25 tau=1 xbar=0.5, posterior expectation by quadrature
inline constexpr double kSprengerKl = 3.3700073964497041;

inline constexpr double kChi2OneBelowTwo = 0.8427007929;

// (xbar - theta0) - z_0.9 * 0.4 / sqrt(527135) with xbar = 106298 / 527135
inline constexpr double kStoneGamma0p9 = 0.000946278650294;

}  // namespace oracle
