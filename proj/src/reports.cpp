#include "cesaro/reports.hpp"

#include <cstdio>

namespace cesaro {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_header(const CheckReport&) {
    return "name,p,grid_size,worst_margin,worst_point,passed";
}

std::string csv_header(const ExtremalReport&) {
    return "p,r,m,N,sum_x_p,sum_z_p,ratio_p,analytic_limit,gap";
}

std::string csv_header(const NormEstimate&) {
    return "p,N,kind,lower_bound,analytic,rel_gap,iterations";
}

std::string to_csv_row(const CheckReport& r) {
    return r.name + ',' + format_double(r.p) + ',' + std::to_string(r.grid_size) +
           ',' + format_double(r.worst_margin) + ',' +
           format_double(r.worst_point) + ',' + (r.passed ? "true" : "false");
}

std::string to_csv_row(const ExtremalReport& r) {
    return format_double(r.p) + ',' + format_double(r.r) + ',' +
           std::to_string(r.m) + ',' + std::to_string(r.N) + ',' +
           format_double(r.sum_x_p) + ',' + format_double(r.sum_z_p) + ',' +
           format_double(r.ratio_p) + ',' + format_double(r.analytic_limit) +
           ',' + format_double(r.gap);
}

std::string to_csv_row(const NormEstimate& r) {
    return format_double(r.p) + ',' + std::to_string(r.N) + ',' +
           to_string(r.kind) + ',' + format_double(r.lower_bound) + ',' +
           format_double(r.analytic) + ',' + format_double(r.rel_gap) + ',' +
           std::to_string(r.iterations);
}

nlohmann::json to_json(const CheckReport& r) {
    return {{"name", r.name},          {"p", r.p},
            {"grid_size", r.grid_size}, {"worst_margin", r.worst_margin},
            {"worst_point", r.worst_point}, {"passed", r.passed}};
}

nlohmann::json to_json(const ExtremalReport& r) {
    return {{"p", r.p},
            {"r", r.r},
            {"m", r.m},
            {"N", r.N},
            {"sum_x_p", r.sum_x_p},
            {"sum_z_p", r.sum_z_p},
            {"ratio_p", r.ratio_p},
            {"analytic_limit", r.analytic_limit},
            {"gap", r.gap}};
}

nlohmann::json to_json(const NormEstimate& r) {
    return {{"p", r.p},
            {"N", r.N},
            {"kind", to_string(r.kind)},
            {"lower_bound", r.lower_bound},
            {"analytic", r.analytic},
            {"rel_gap", r.rel_gap},
            {"iterations", r.iterations},
            {"ratio_trace", r.ratio_trace}};
}

nlohmann::json to_json(const InterpolationReport& r) {
    return {{"p0", r.p0},
            {"p", r.p},
            {"p1", r.p1},
            {"theta", r.theta},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"holds", r.holds},
            {"section_p0", r.section_p0},
            {"section_p", r.section_p},
            {"section_p1", r.section_p1}};
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::size_t cell_start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', cell_start);
            if (comma == std::string_view::npos) {
                cells.emplace_back(line.substr(cell_start));
                break;
            }
            cells.emplace_back(line.substr(cell_start, comma - cell_start));
            cell_start = comma + 1;
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace cesaro
