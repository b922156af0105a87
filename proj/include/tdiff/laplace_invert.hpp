#pragma once

#include <complex>
#include <functional>
#include <string_view>
#include <vector>

namespace tdiff {

enum class InversionMethod { gaver_stehfest, talbot };

struct InversionSettings {
    InversionMethod method = InversionMethod::gaver_stehfest;
    /// Gaver-Stehfest: even, 6..18. Talbot: number of contour nodes (>= 2).
    int terms = 14;

    static InversionSettings talbot(int nodes = 24) { return {InversionMethod::talbot, nodes}; }
    static InversionSettings gaver_stehfest(int terms = 14) {
        return {InversionMethod::gaver_stehfest, terms};
    }

    /// Throws SettingsError.
    void validate() const;
};

InversionMethod parse_inversion_method(std::string_view name);

using RealTransform = std::function<double(double)>;
using ComplexTransform = std::function<std::complex<double>(std::complex<double>)>;

/// f(t) from its Laplace transform F sampled on the positive real axis.
/// Only Gaver-Stehfest is possible here; a talbot setting is a SettingsError.
double invert(const RealTransform& transform, double t, const InversionSettings& settings = {});

/// f(t) from a transform that can be evaluated off the real axis.
double invert(const ComplexTransform& transform, double t, const InversionSettings& settings);

/// Gaver-Stehfest weights V_1..V_N (index 0 unused).
std::vector<double> stehfest_weights(int terms);

}  // namespace tdiff
