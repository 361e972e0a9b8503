#pragma once

// Deterministic text output for convergence reports and energy traces:
// fixed column order, 17 significant digits, no locale dependence.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "sbpwave/convergence.hpp"

namespace sbpwave {

namespace detail {

inline std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

// CSV with one row per level: N,h,l2_error,max_error,q_l2,q_max. The rate
// columns refer to the step from the previous level and are empty on the first
// row and around failed levels; failed levels carry the diagnostic instead of
// numbers.
inline void write_report_csv(std::ostream& os, const ConvergenceReport& rep) {
    os << "N,h,l2_error,max_error,q_l2,q_max\n";
    for (size_t i = 0; i < rep.levels.size(); ++i) {
        const auto& lv = rep.levels[i];
        os << lv.N << ",";
        if (lv.failed) {
            os << ",FAILED: " << lv.message << ",,,\n";
            continue;
        }
        os << detail::num17(lv.h) << "," << detail::num17(lv.l2) << ","
           << detail::num17(lv.linf) << ",";
        if (i > 0 && std::isfinite(rep.q_l2[i - 1])) os << detail::num17(rep.q_l2[i - 1]);
        os << ",";
        if (i > 0 && std::isfinite(rep.q_max[i - 1]))
            os << detail::num17(rep.q_max[i - 1]);
        os << "\n";
    }
}

inline void write_energy_csv(std::ostream& os,
                             const std::vector<std::pair<double, double>>& trace) {
    os << "t,energy\n";
    for (const auto& [t, e] : trace)
        os << detail::num17(t) << "," << detail::num17(e) << "\n";
}

// Human-readable study summary including the predicted rate.
inline void write_report_text(std::ostream& os, const ConvergenceReport& rep) {
    os << "study " << (rep.config.label.empty() ? "custom" : rep.config.label)
       << ": kind=" << to_string(rep.config.kind) << " order=" << rep.config.order
       << " tau_mult=" << rep.config.tau_multiplier << "\n";
    os << "predicted rate: " << rep.prediction.overall
       << "  (gain " << rep.prediction.boundary_gain << ", "
       << to_string(rep.prediction.rationale) << ")\n";
    char line[160];
    std::snprintf(line, sizeof(line), "%6s %12s %12s %8s %8s\n", "N", "l2", "max",
                  "q_l2", "q_max");
    os << line;
    for (size_t i = 0; i < rep.levels.size(); ++i) {
        const auto& lv = rep.levels[i];
        if (lv.failed) {
            std::snprintf(line, sizeof(line), "%6d  FAILED: %.120s\n", lv.N,
                          lv.message.c_str());
            os << line;
            continue;
        }
        if (i == 0 || !std::isfinite(rep.q_l2[i - 1]))
            std::snprintf(line, sizeof(line), "%6d %12.4e %12.4e %8s %8s\n", lv.N,
                          lv.l2, lv.linf, "-", "-");
        else
            std::snprintf(line, sizeof(line), "%6d %12.4e %12.4e %8.2f %8.2f\n",
                          lv.N, lv.l2, lv.linf, rep.q_l2[i - 1], rep.q_max[i - 1]);
        os << line;
    }
}

} // namespace sbpwave
