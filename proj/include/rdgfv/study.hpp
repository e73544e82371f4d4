#pragma once

#include "rdgfv/linsolve.hpp"
#include "rdgfv/norms.hpp"
#include "rdgfv/problems.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdgfv {

struct SolveResult {
    SchemeConfig config;
    AvgField<double> averages;
    double residual = 0.0;
    double multiplier = 0.0;  // periodic zero-mean multiplier, 0 under dirichlet
    ErrorReport errors;
};

inline SolveResult solve_problem(const SchemeConfig& config, const ProblemSpec& problem,
                                 double tol = 1e-12) {
    const SparseSystem system = assemble(config, problem.f);
    const SolveReport solved = solve(system, tol);
    SolveResult result{config, to_field(config, solved.solution), solved.residual, 0.0, {}};
    if (system.has_multiplier)
        result.multiplier = solved.solution[solved.solution.size() - 1];
    result.errors = error_norms(config, result.averages, problem.u, problem.grad);
    return result;
}

struct ConvergenceRow {
    int n = 0;
    double h = 0.0;
    double l2 = 0.0, sip = 0.0, sip_star = 0.0, residual = 0.0;
    bool has_rates = false;  // first row has no predecessor
    double l2_rate = 0.0, sip_rate = 0.0, sip_star_rate = 0.0;
};

struct ConvergenceTable {
    SchemeConfig base;
    std::string problem;
    std::vector<ConvergenceRow> rows;
};

/// One solve per mesh size; rate entries are log2(e_coarse / e_fine) of
/// consecutive rows.
inline ConvergenceTable run_convergence(const SchemeConfig& base, const ProblemSpec& problem,
                                        const std::vector<int>& n_list, double tol = 1e-12) {
    if (n_list.empty()) throw std::invalid_argument("run_convergence: empty n list");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("run_convergence: n list must be ascending");

    ConvergenceTable table{base, problem.name, {}};
    for (int n : n_list) {
        SchemeConfig config = base;
        config.n = n;
        const SolveResult result = solve_problem(config, problem, tol);
        ConvergenceRow row;
        row.n = n;
        row.h = result.errors.h;
        row.l2 = result.errors.l2;
        row.sip = result.errors.sip;
        row.sip_star = result.errors.sip_star;
        row.residual = result.residual;
        if (!table.rows.empty()) {
            const ConvergenceRow& prev = table.rows.back();
            const double ratio = std::log2(double(n) / prev.n);
            row.has_rates = true;
            row.l2_rate = std::log2(prev.l2 / row.l2) / ratio;
            row.sip_rate = std::log2(prev.sip / row.sip) / ratio;
            row.sip_star_rate = std::log2(prev.sip_star / row.sip_star) / ratio;
        }
        table.rows.push_back(row);
    }
    return table;
}

namespace detail {
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace detail

inline std::string to_csv(const ConvergenceTable& table) {
    std::ostringstream out;
    out << "n,h,l2,l2_rate,sip,sip_rate,sip_star,sip_star_rate,residual\n";
    for (const ConvergenceRow& r : table.rows) {
        using detail::fmt17;
        out << r.n << ',' << fmt17(r.h) << ',' << fmt17(r.l2) << ','
            << (r.has_rates ? fmt17(r.l2_rate) : "") << ',' << fmt17(r.sip) << ','
            << (r.has_rates ? fmt17(r.sip_rate) : "") << ',' << fmt17(r.sip_star) << ','
            << (r.has_rates ? fmt17(r.sip_star_rate) : "") << ',' << fmt17(r.residual) << '\n';
    }
    return out.str();
}

/// Static log-log SVG: l2 and sip,* error curves over h, with dashed
/// reference guides of slope k and k+1 anchored at the first data point.
inline std::string to_svg(const ConvergenceTable& table) {
    const double width = 640, height = 480;
    const double left = 70, right = 20, top = 30, bottom = 50;

    double lxmin = 1e300, lxmax = -1e300, lymin = 1e300, lymax = -1e300;
    auto see = [&](double x, double y) {
        if (y <= 0.0) return;
        lxmin = std::min(lxmin, std::log10(x));
        lxmax = std::max(lxmax, std::log10(x));
        lymin = std::min(lymin, std::log10(y));
        lymax = std::max(lymax, std::log10(y));
    };
    for (const auto& r : table.rows) {
        see(r.h, r.l2);
        see(r.h, r.sip_star);
    }
    const int k = table.base.order;
    // guide lines through the coarsest sip,* point
    const ConvergenceRow& first = table.rows.front();
    const ConvergenceRow& last = table.rows.back();
    for (int slope : {k, k + 1}) {
        see(last.h, first.sip_star * std::pow(last.h / first.h, slope));
    }
    lymin -= 0.2;
    lymax += 0.2;
    lxmin -= 0.05;
    lxmax += 0.05;

    auto px = [&](double h) {
        return left + (std::log10(h) - lxmin) / (lxmax - lxmin) * (width - left - right);
    };
    auto py = [&](double e) {
        return height - bottom -
               (std::log10(e) - lymin) / (lymax - lymin) * (height - top - bottom);
    };
    auto polyline = [&](auto value, const char* color, const char* dash) {
        std::ostringstream p;
        p << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
        if (dash[0]) p << " stroke-dasharray=\"" << dash << "\"";
        p << " points=\"";
        for (const auto& r : table.rows) p << px(r.h) << ',' << py(value(r)) << ' ';
        p << "\"/>\n";
        return p.str();
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\">" << table.problem
        << " (k=" << k << ")</text>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right
        << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << height - bottom << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">h (log)</text>\n";
    svg << "<text x=\"18\" y=\"" << height / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << height / 2 << ")\">error (log)</text>\n";

    svg << polyline([](const ConvergenceRow& r) { return r.l2; }, "#1f77b4", "");
    svg << polyline([](const ConvergenceRow& r) { return r.sip_star; }, "#d62728", "");
    for (int slope : {k, k + 1}) {
        const double y0 = first.sip_star;
        svg << "<line x1=\"" << px(first.h) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(last.h)
            << "\" y2=\"" << py(y0 * std::pow(last.h / first.h, slope))
            << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
        svg << "<text x=\"" << px(last.h) + 4 << "\" y=\""
            << py(y0 * std::pow(last.h / first.h, slope)) << "\" font-size=\"11\">slope " << slope
            << "</text>\n";
    }
    svg << "<text x=\"" << width - right - 120 << "\" y=\"" << top + 16
        << "\" fill=\"#1f77b4\" font-size=\"12\">l2</text>\n";
    svg << "<text x=\"" << width - right - 120 << "\" y=\"" << top + 32
        << "\" fill=\"#d62728\" font-size=\"12\">sip,*</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

}  // namespace rdgfv
