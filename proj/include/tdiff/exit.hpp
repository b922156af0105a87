#pragma once

#include "tdiff/params.hpp"

namespace tdiff {

/// Values of the decreasing and increasing q-harmonic functions at one point.
/// Both equal 1 at the threshold.
struct GPair {
    double g_minus_at;
    double g_plus_at;
};

double g_minus(const DiffusionParams& p, double q, double x);
double g_plus(const DiffusionParams& p, double q, double x);
GPair g_pair(const DiffusionParams& p, double q, double x);

/// Logarithms of g_minus / g_plus. These never overflow and are what the
/// exit transforms are built from.
double log_g_minus(const DiffusionParams& p, double q, double x);
double log_g_plus(const DiffusionParams& p, double q, double x);

struct ExitQuery {
    DiffusionParams params;
    double q;
    double x;  ///< start
    double y;  ///< lower level
    double z;  ///< upper level
};

struct TwoSidedExit {
    double down_lt;  ///< E_x[exp(-q T_y); T_y < T_z]
    double up_lt;    ///< E_x[exp(-q T_z); T_z < T_y]
};

TwoSidedExit two_sided_exit(const ExitQuery& query);

/// E_x[exp(-q T_y)] for y <= x.
double one_sided_down(const DiffusionParams& p, double q, double x, double y);

/// E_x[exp(-q T_z)] for x <= z.
double one_sided_up(const DiffusionParams& p, double q, double x, double z);

}  // namespace tdiff
