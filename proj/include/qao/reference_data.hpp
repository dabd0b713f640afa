#pragma once

// Published tables of variational parameters and energies (g = 1), kept as
// compiled-in constants. They serve as golden values for the report and as
// default starting points for the five-parameter minimization.
//
// Missing cells are std::nullopt.

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>

namespace qao::reference {

using Cell = std::optional<double>;
inline constexpr Cell none = std::nullopt;

/// The lambda grid shared by the ground- and excited-state tables.
inline constexpr std::array<double, 9> lambda_grid{0.0, 0.1, 0.3, 0.5, 1.0, 2.0, 10.0, 100.0, 1000.0};
inline constexpr std::array<std::string_view, 9> lambda_labels{"0", "1/10", "3/10", "1/2", "1", "2", "10", "100", "1000"};

/// HOWF alpha and energy for the three potentials at lambda = 1/4, levels 0..10.
struct HowfLevelRow {
  int state;
  double alpha_quadratic, e_quadratic;
  double alpha_qao, e_qao;
  double alpha_quartic, e_quartic;
};

inline constexpr std::array<HowfLevelRow, 11> howf_levels{{
    {0, 1, 0.5, 0.835913, 0.624016, 0.934655, 0.429268},
    {1, 1, 1.5, 0.790422, 2.03496, 0.858374, 1.52686},
    {2, 1, 2.5, 0.74854, 3.69654, 0.797057, 2.95136},
    {3, 1, 3.5, 0.718034, 5.54254, 0.755981, 4.59311},
    {4, 1, 4.5, 0.694574, 7.53854, 0.72593, 6.40449},
    {5, 1, 5.5, 0.675683, 9.66296, 0.702525, 8.35796},
    {6, 1, 6.5, 0.659954, 11.9008, 0.683501, 10.4351},
    {7, 1, 7.5, 0.646527, 14.2408, 0.667555, 12.6226},
    {8, 1, 8.5, 0.634846, 16.6742, 0.65388, 14.9102},
    {9, 1, 9.5, 0.624529, 19.1939, 0.641944, 17.2898},
    {10, 1, 10.5, 0.615306, 21.7941, 0.631378, 19.7548},
}};

/// Ground-state comparison across lambda; WKB, QLM and expansion values are
/// cited from other work and never recomputed here.
struct GroundComparisonRow {
  double lambda;
  double exact;
  double e_wkb, e_qlm;
  Cell e_expansion;
  double e_showf, e_ppewf;
  double err_wkb, err_qlm;
  Cell err_expansion;
  double err_showf, err_ppewf;
};

inline constexpr std::array<GroundComparisonRow, 9> ground_comparison{{
    {0, 0.5000, 0.5000, 0.5000, none, 0.5000, 0.5000, 0, 0, none, 0, 0},
    {0.1, 0.5592, 0.5333, 0.5615, 0.5591, 0.5603, 0.5591, 4.6267, 0.4185, 0.0179, 0.2069, 0.0179},
    {0.3, 0.6380, 0.5847, 0.6471, 0.6903, 0.6416, 0.6380, 8.3591, 1.4201, 8.2003, 0.5705, 0.0000},
    {0.5, 0.6962, 0.6254, 0.7113, 0.6962, 0.7016, 0.6962, 10.1698, 2.1661, 0.0000, 0.7874, 0.0000},
    {1, 0.8038, 0.7042, 0.8309, 0.8037, 0.8125, 0.8038, 12.3879, 3.3753, 0.0124, 1.0861, 0.0000},
    {2, 0.9516, 0.8167, 0.9958, none, 0.9644, 0.9517, 14.1766, 4.6450, none, 1.3487, 0.0105},
    {10, 1.5050, 1.2541, 1.6109, 1.5049, 1.5313, 1.5053, 16.6681, 7.0354, 0.0066, 1.7462, 0.0199},
    {100, 3.1314, 2.5718, 3.4004, none, 3.1924, 3.1321, 17.8698, 8.5908, none, 1.9499, 0.0223},
    {1000, 6.6942, 5.4795, 7.2974, none, 6.8279, 6.6566, 18.1451, 9.0111, none, 1.9977, 0.5610},
}};

/// One row of a parameter table: HOWF alpha, PPEWF parameters, energies with
/// both families (E_V1 = HOWF, E_V2 = PPEWF) and the cited expansion energy.
struct ParameterRow {
  double lambda;
  Cell alpha;
  double alpha_prime, a, b, c, d;
  Cell e_v1, e_v2;
  Cell e_expansion;
};

using ParameterTable = std::array<ParameterRow, 9>;

// n = 0; energies live in the ground comparison table
inline constexpr ParameterTable ground_parameters{{
    {0, 1.0000, 0.5159, -6.3812e-8, 0.0158, 4.5172e-9, 0.0001, 0.5000, 0.5000, none},
    {0.1, 0.9049, 0.9593, 1.5792e-8, 0.3970, -6.2552e-9, 0.0650, 0.5603, 0.5591, 0.5591},
    {0.3, 0.8201, 1.2758, 1.1366e-8, 0.6298, -3.2124e-8, 0.1704, 0.6416, 0.6380, 0.6903},
    {0.5, 0.7734, 1.4768, -2.6587e-8, 0.7695, 1.1979e-8, 0.2579, 0.7016, 0.6962, 0.6962},
    {1, 0.7071, 1.8188, -2.7498e-8, 0.9985, 2.0280e-8, 0.4403, 0.8125, 0.8038, 0.8037},
    {2, 0.6451, 1.4587, -2.1643e-8, 0.5405, 1.8083e-9, -0.1850, 0.9644, 0.9517, none},
    {10, 0.5000, 2.4254, -2.7190e-8, 0.9866, -3.5926e-8, -0.5607, 1.5313, 1.5053, 1.5049},
    {100, 0.3435, 5.1645, -2.4426e-7, 2.1850, 9.8765e-7, -2.6425, 3.1924, 3.1321, none},
    {1000, 0.2345, 11.0987, 1.7278e-7, 4.7358, -2.2411e-6, -12.3060, 6.8279, 6.6566, none},
}};

inline constexpr ParameterTable first_excited{{
    {0, none, 0.8650, -0.1233, 0.3005, 0.0089, 0.1451, none, 1.5072, none},
    {0.1, 0.8688, 0.9910, 0.0, 0.3922, 0.0, 0.0705, 1.7734, 1.7695, 1.7695},
    {0.3, 0.7734, 1.3296, 0.0, 0.6099, 0.0, 0.1820, 2.1050, 2.0947, 2.0946},
    {0.5, 0.7247, 1.5437, 0.0, 0.7392, 0.0, 0.2736, 2.3391, 2.3245, 2.3244},
    {1, 0.6581, 1.9068, 0.0, 0.9510, 0.0, 0.4634, 2.7599, 2.7380, 2.7379},
    {2, 0.5937, 1.6078, 0.0, 0.5749, 0.0, -0.1762, 3.3240, 3.2932, 3.2929},
    {10, 0.4606, 2.6879, 0.0, 1.0393, 0.0, -0.5321, 5.3821, 5.3223, 5.3216},
    {100, 0.3157, 5.7370, 0.0, 2.2918, 0.0, -2.5034, 11.3249, 11.1888, 11.1873},
    {1000, 0.2154, 12.3351, 0.0, 4.9626, 0.0, -11.6542, 24.2722, 23.9756, 23.9722},
}};

inline constexpr ParameterTable second_excited{{
    {0, none, 1.1095, 3.1969e-8, -0.3322, -9.6906e-9, 0.2092, none, 1.6234, none},
    {0.1, 0.8326, 1.5141, 1.8717e-8, -0.4210, 1.9628e-9, 0.4114, 3.1382, 1.9148, 3.1386},
    {0.3, 0.7311, 1.9328, 5.3775e-8, -0.5188, -3.7516e-9, 0.6886, 3.8424, 2.2679, 3.8448},
    {0.5, 0.6819, 2.2106, -7.4693e-9, -0.5854, 3.2488e-8, 0.9103, 4.3235, 2.5175, 4.3275},
    {1, 0.6164, 2.6917, 9.2245e-8, -0.7026, -1.6350e-7, 1.3649, 5.1724, 2.9667, 5.1793},
    {2, 0.5544, 3.3171, 9.6515e-8, -0.8570, -6.3216e-8, 2.0898, 6.2933, 3.5693, 6.3038},
    {10, 0.4285, 5.5301, 2.5052e-7, -1.4107, -4.9787e-7, 5.8680, 10.3244, 5.7714, 10.3405},
    {100, 0.2933, 11.7895, -3.1944e-7, -2.9905, 4.2280e-6, 26.7911, 21.8535, 12.1359, 21.9068},
    {1000, 0.2000, 25.3418, -1.4508e-7, -6.4201, -7.2534e-6, 123.9130, 46.9000, 26.0065, 47.0173},
}};

inline constexpr ParameterTable third_excited{{
    {0, none, 1.3346, 1.8644e-8, -0.5249, -1.2182e-8, 1.1095, none, 1.7791, none},
    {0.1, 0.8045, 1.8015, 4.5514e-8, -0.6932, -3.7409e-9, 0.4299, 4.6219, 2.1045, 4.6288},
    {0.3, 0.7005, 2.2901, 1.7142e-8, -0.8722, 6.1995e-9, 0.7042, 5.7795, 2.4976, 5.7966},
    {0.5, 0.6516, 2.6153, 8.1309e-9, -0.9922, -1.8409e-8, 0.9232, 6.5548, 2.7749, 6.5784},
    {1, 0.5875, 3.1797, 2.9808e-8, -1.2013, -4.8260e-8, 1.3725, 7.9079, 3.2734, 7.9424},
    {2, 0.5274, 3.9144, 2.1630e-8, -1.4745, -3.0699e-8, 2.0886, 9.6796, 3.9416, 9.7273},
    {10, 0.4069, 6.5176, -1.2841e-7, -2.4461, -3.1815e-7, 5.8204, 15.9993, 6.3803, 16.0902},
    {100, 0.2782, 14.3617, -4.9823e-2, -5.6885, -1.5536e-2, 29.4760, 33.9779, 13.0230, 34.1825},
    {1000, 0.1897, 29.8474, -4.0516e-7, -11.1800, 7.7075e-6, 122.4120, 72.9741, 28.7684, 73.4191},
}};

inline constexpr ParameterTable fourth_excited{{
    {0, none, 1.5112, -3.5220e-8, -0.6034, -7.4813e-10, 0.2186, none, 1.9261, none},
    {0.1, 0.7821, 2.0387, 2.3034e-8, -0.8050, -1.9464e-8, 0.4048, 6.2052, 2.2870, 6.2203},
    {0.3, 0.6771, 2.5905, -1.0023e-8, -1.0176, 9.3589e-10, 0.6592, 7.8782, 2.7206, 7.9118},
    {0.5, 0.6287, 2.9579, 3.7213e-8, -1.1597, -2.1960e-8, 0.8623, 8.9838, 3.0258, 9.0286},
    {1, 0.5659, 3.5956, -3.8471e-8, -1.4067, 3.9776e-8, 1.2788, 10.9000, 3.5735, 10.9636},
    {2, 0.5075, 4.4257, -1.5616e-8, -1.7290, -1.4541e-8, 1.9424, 13.3951, 4.3067, 13.4813},
    {10, 0.3910, 7.3677, -5.2779e-8, -2.8730, 1.3048e-7, 5.4005, 22.2484, 6.9795, 22.4088},
    {100, 0.2672, 11.8257, 52.4496, 5.7943, -7.2998, -5.1408, 47.3495, 18.9854, 47.70725},
    {1000, 0.1822, 26.9273, 12.0423, 25.9020, 1.6869, 4.8171, 101.7400, 40.5811, 102.514},
}};

inline constexpr ParameterTable fifth_excited{{
    {0, none, 1.6636, 2.8055e-8, -0.6352, -1.3414e-8, 0.2017, none, 2.0635, none},
    {0.1, 0.7637, 2.2501, 2.5363e-8, -0.8532, -1.3567e-8, 0.3736, 7.8752, 2.4601, 7.8998},
    {0.3, 0.6583, 2.8615, -4.6129e-8, -1.0817, 1.8465e-8, 0.6078, 10.1151, 2.9335, 10.1665},
    {0.5, 0.6105, 3.2682, 1.1034e-8, -1.2340, -1.2200e-8, 0.7947, 11.5810, 3.2659, 11.6987},
    {1, 0.5488, 3.9737, 1.7574e-8, -1.4984, 6.3936e-9, 1.1777, 14.1090, 3.8616, 14.2031},
    {2, 0.4918, 4.8919, 4.3208e-8, -1.8430, -4.9671e-8, 1.7880, 17.3877, 4.6580, 17.5141},
    {10, 0.3786, 8.1444, -7.4142e-8, -3.0649, 8.4135e-8, 4.9668, 28.9793, 7.5573, 29.2115},
    {100, 0.2586, 13.2819, 1.7275, -3.7438, -2.1893, 5.0732, 61.7660, 20.4899, 62.2812},
    {1000, 0.1763, 28.5900, 480.8010, 4.9273, 3.0109, 31.1223, 132.7600, 44.8562, 133.8769},
}};

/// Parameter table for level n (0..5).
inline const ParameterTable& parameters_for_level(int n) {
  switch (n) {
    case 0: return ground_parameters;
    case 1: return first_excited;
    case 2: return second_excited;
    case 3: return third_excited;
    case 4: return fourth_excited;
    case 5: return fifth_excited;
    default: throw std::out_of_range("reference: parameter tables cover levels 0..5");
  }
}

/// Row whose lambda is closest to the requested one on a log(1 + lambda) scale.
inline const ParameterRow& nearest_row(int n, double lambda) {
  const ParameterTable& table = parameters_for_level(n);
  const ParameterRow* best = &table.front();
  double best_dist = INFINITY;
  for (const ParameterRow& row : table) {
    const double dist = std::abs(std::log1p(row.lambda) - std::log1p(lambda));
    if (dist < best_dist) {
      best_dist = dist;
      best = &row;
    }
  }
  return *best;
}

}  // namespace qao::reference
