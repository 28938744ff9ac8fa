#pragma once

// Internal coefficient tables shared by the library sources.
//
// All series coefficients below were computed with exact rational
// arithmetic and rounded once to the nearest double (or long double
// for the extended-precision tables).

#include <array>

namespace gamdist::detail {

// Maclaurin coefficients of tau(zeta) - 1, where tau solves
//   tau - ln(tau) - 1 = zeta^2 / 2,  sign(tau - 1) = sign(zeta).
// tau(zeta) = 1 + sum_{k>=1} kTauSeries[k-1] * zeta^k.
inline constexpr std::array<double, 36> kTauSeries = {
    1.0,
    0.3333333333333333333333333,   // 1/3
    0.02777777777777777777777778,  // 1/36
    -0.003703703703703703703703704,  // -1/270
    0.0002314814814814814814814815,  // 1/4320
    5.878894767783656672545561e-5,   // 1/17010
    -2.553644914756025867136978e-5,  // -139/5443200
    4.899078973153047227121301e-6,   // 1/204120
    -2.428276122977769068304048e-7,  // -571/2351462400
    -1.854062210715159960701799e-7,  // -281/1515591000
    7.542464855411896368196584e-8,
    -1.472162728068839942030005e-8,
    5.159887341078075831053382e-10,
    7.32986413160022003040997e-10,
    -2.921357345635568791035316e-10,
    5.717312238897993896364055e-11,
    -1.500834940879191162757527e-12,
    -3.239317851416902815257827e-12,
    1.282207790561442960194425e-12,
    -2.513834640057087794545275e-13,
    5.24018668188387370039877e-15,
    1.532619664727720626739863e-14,
    -6.053864010513748112692896e-15,
    1.188953908626976800165288e-15,
    -2.055644733697029047596258e-17,
    -7.597033959365170321306246e-17,
    2.999822650631319012618947e-17,
    -5.900904005856486363982672e-18,
    8.726010378440994563002107e-20,
    3.895646579519858862941029e-19,
    -1.538721628974349922006993e-19,
    3.030976893455074101314718e-20,
    -3.918959253950962124376744e-22,
    -2.049773603878145111920749e-21,
    8.100415520505533142637703e-22,
    -1.597495044168624305600741e-22,
};

// Maclaurin coefficients of f(zeta) = zeta / (tau(zeta) - 1),
// f(zeta) = sum_{k>=0} kFSeries[k] * zeta^k, f(0) = 1.
inline constexpr std::array<double, 37> kFSeries = {
    1.0,
    -0.3333333333333333333333333,  // -1/3
    0.08333333333333333333333333,  // 1/12
    -0.01481481481481481481481481, // -2/135
    0.001157407407407407407407407, // 1/864
    0.0003527336860670194003527337, // 1/2835
    -0.0001787551440329218106995885, // -139/777600
    3.919263178522437781697041e-5,   // 1/25515
    -2.185448510679992161473643e-6,  // -571/261273600
    -1.854062210715159960701799e-6,  // -281/151559100
    8.296711340953086005016242e-7,
    -1.766595273682607930436005e-7,
    6.707853543401498580369397e-9,
    1.026180978424030804257396e-8,
    -4.382036018453353186552975e-9,
    9.147699582236790234182488e-10,
    -2.551419399494624976687795e-11,
    -5.830772132550425067464089e-11,
    2.436194802066741624369407e-11,
    -5.02766928011417558909055e-12,
    1.100439203195613477083742e-13,
    3.371763262400985378827699e-13,
    -1.392388722418162065919366e-13,
    2.853489380704744320396691e-14,
    -5.139111834242572618990646e-16,
    -1.975228829434944283539624e-15,
    8.099521156704561334071157e-16,
    -1.652253121639816181915148e-16,
    2.530543009747888423270611e-18,
    1.168693973855957658882309e-17,
    -4.770037049820484758221678e-18,
    9.699126059056237124207097e-19,
    -1.293256553803817501044326e-20,
    -6.969230253185693380530546e-20,
    2.835145432176936599923196e-20,
    -5.750982159007047500162666e-21,
    6.792953783488914564614966e-23,
};

// eta(v) = v * sum_{k>=0} kEtaOfV[k] * v^k  with v = lambda - 1 and
//   eta^2 / 2 = v - log(1 + v), sign(eta) = sign(v).
inline constexpr std::array<double, 21> kEtaOfV = {
    1.0,
    -0.3333333333333333333333333,  // -1/3
    0.1944444444444444444444444,   // 7/36
    -0.1351851851851851851851852,  // -73/540
    0.1027006172839506172839506,   // 1331/12960
    -0.08233759553203997648442093,
    0.06844705320399764844209289,
    -0.05840173672349598275524201,
    0.05081907369643673656019335,
    -0.04490435697557503970398346,
    0.04016938376097095794251062,
    -0.0362982335082149435974528,
    0.03307773457543801610682431,
    -0.03035900741401989647667647,
    0.02803503116260139296436639,
    -0.02602696448559754600952933,
    0.02427548609298020604902464,
    -0.02273513406687180855531956,
    0.02137050103115191637396971,
    -0.0201536136107264653329926,
    0.01906208827032253906319257,
};

// inverf(z) = sum_{k>=0} kInverfSeries[k] * w^{2k+1},  w = (sqrt(pi)/2) z.
inline constexpr std::array<double, 25> kInverfSeries = {
    1.0,
    0.3333333333333333333333333,  // 1/3
    0.2333333333333333333333333,  // 7/30
    0.2015873015873015873015873,  // 127/630
    0.1926366843033509700176367,  // 4369/22680
    0.1953254769921436588103255,  // 34807/178200
    0.2059358645469756580867692,
    0.2232097574187521277468367,
    0.246970233142754929247304,
    0.2776538256032239948093489,
    0.3161426235531171955600943,
    0.3637175870396922000263292,
    0.4220720808430425826239159,
    0.4933632655639345750418357,
    0.5802938460615139863531759,
    0.6862233969476912380466906,
    0.815312205552808117727271,
    0.9727032088645525291688011,
    1.164749963618441795826006,
    1.399301083166670241074603,
    1.68605445453950537711744,
    2.036998019194067854350942,
    2.466958165204546380569243,
    2.994282066479119005745463,
    3.64168689003034546893382,
};

// Stirling-series coefficients B_{2n} / ((2n-1)(2n)), n = 1..13, so that
//   S(x) = sum_n kStirlingCoef[n-1] * x^{-(2n-1)}.
inline constexpr std::array<long double, 13> kStirlingCoef = {
    1.0L / 12.0L,
    -1.0L / 360.0L,
    1.0L / 1260.0L,
    -1.0L / 1680.0L,
    1.0L / 1188.0L,
    -691.0L / 360360.0L,
    1.0L / 156.0L,
    -3617.0L / 122400.0L,
    43867.0L / 244188.0L,
    -174611.0L / 125400.0L,
    77683.0L / 5796.0L,
    -236364091.0L / 1506960.0L,
    657931.0L / 300.0L,
};

// zeta(k) for k = 2..12.
inline constexpr std::array<long double, 11> kZeta = {
    1.644934066848226436472415L,
    1.202056903159594285399738L,
    1.082323233711138191516004L,
    1.036927755143369926331365L,
    1.017343061984449139714518L,
    1.008349277381922826839798L,
    1.004077356197944339378685L,
    1.002008392826082214417853L,
    1.000994575127818085337146L,
    1.000494188604119464558702L,
    1.000246086553308048298638L,
};

// n! for n = 0..22 (correctly rounded doubles).
inline constexpr std::array<double, 23> kFactorial = {
    1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0,
    3628800.0, 39916800.0, 479001600.0, 6227020800.0, 87178291200.0,
    1307674368000.0, 20922789888000.0, 355687428096000.0,
    6402373705728000.0, 121645100408832000.0, 2432902008176640000.0,
    51090942171709440000.0, 1124000727777607680000.0,
};

inline constexpr long double kPiL = 3.14159265358979323846264338327950288420L;
inline constexpr long double kSqrtPiL = 1.772453850905516027298167483341145182798L;
inline constexpr long double kHalfLn2PiL = 0.918938533204672741780329736405617639862L;
inline constexpr long double kEulerGammaL = 0.5772156649015328606065120900824024310422L;
inline constexpr double kSqrtPi = 1.7724538509055160273;
inline constexpr double kTwoOverSqrtPi = 1.1283791670955125739;
inline constexpr double kOneOverSqrtPi = 0.56418958354775628695;
inline constexpr double kHalfSqrtPi = 0.88622692545275801365;
inline constexpr double kSqrt2 = 1.4142135623730950488;
inline constexpr double kSqrt2Pi = 2.5066282746310005024;
inline constexpr double kHalfLn2Pi = 0.91893853320467274178;

}  // namespace gamdist::detail
