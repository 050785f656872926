#include "qdyn/io.hpp"

#include <cmath>
#include <regex>
#include <stdexcept>

#include <json.hpp>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

using nlohmann::json;

json point_json(const ExtendedComplex& z) {
    if (z.is_infinite()) return "infinity";
    return json::array({z.value().real(), z.value().imag()});
}

json real_or_null(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number: " + s);
    return v;
}

}  // namespace

Complex parse_complex(std::string_view text) {
    static const std::string num = R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))";
    static const std::regex pair_re("^\\s*" + num + "\\s*,\\s*" + num + "\\s*$");
    static const std::regex full_re("^\\s*" + num + "(?:\\s*([+-])\\s*((?:\\d+\\.?\\d*|\\.\\d+)(?:[eE][+-]?\\d+)?)?\\s*i)?\\s*$");
    static const std::regex imag_re("^\\s*" + num + "?\\s*i\\s*$");
    const std::string s(text);
    std::smatch m;
    try {
        if (std::regex_match(s, m, pair_re)) return {to_double(m[1]), to_double(m[2])};
        if (std::regex_match(s, m, full_re)) {
            const double re = to_double(m[1]);
            if (!m[2].matched) return {re, 0.0};
            const double mag = m[3].matched ? to_double(m[3]) : 1.0;
            return {re, m[2] == "-" ? -mag : mag};
        }
        if (std::regex_match(s, m, imag_re)) {
            if (!m[1].matched) return {0.0, 1.0};
            return {0.0, to_double(m[1])};
        }
    } catch (const std::out_of_range&) {
    }
    throw std::invalid_argument("malformed complex number: '" + s + "'");
}

std::string fixed_points_json(Complex A, const std::vector<StabilityReport>& reports) {
    json list = json::array();
    for (const auto& r : reports)
        list.push_back({{"label", to_string(r.label)},
                        {"point", point_json(r.point)},
                        {"multiplier_modulus", real_or_null(r.multiplier_modulus)},
                        {"class", to_string(r.stability)},
                        {"multiplicity", r.multiplicity}});
    return json{{"A", point_json(A)}, {"fixed_points", list}}.dump(2);
}

std::string critical_points_json(Complex A, const std::vector<CriticalPoint>& points) {
    json list = json::array();
    for (const auto& c : points)
        list.push_back({{"label", to_string(c.label)}, {"point", point_json(c.point)}, {"free", c.is_free}});
    return json{{"A", point_json(A)}, {"critical_points", list}}.dump(2);
}

std::string stability_json(Complex A) {
    json doc{{"A", point_json(A)},
             {"stability_z1", real_or_null(stability_z1(A))},
             {"disk_z1", to_string(in_stability_disk_z1(A))},
             {"disk_z23", to_string(in_stability_disk_z23(A))}};
    try {
        doc["stability_z23"] = real_or_null(stability_z23(A));
        doc["z23_source"] = "closed-form";
    } catch (const DomainExcluded&) {
        doc["stability_z23"] = nullptr;
        doc["z23_source"] = "none";
        for (const auto& f : fixed_points(A)) {
            if (f.label == FixedLabel::Z2) {
                doc["stability_z23"] = real_or_null(f.multiplier_modulus);
                doc["z23_source"] = "direct";
            }
        }
    }
    return doc.dump(2);
}

std::string orbits_json(Complex A, const std::vector<Orbit>& orbits) {
    json list = json::array();
    for (const auto& o : orbits) {
        json pts = json::array();
        for (const auto& p : o.points) pts.push_back(json::array({p.real(), p.imag()}));
        list.push_back({{"A", point_json(A)},
                        {"period", o.period},
                        {"points", pts},
                        {"multiplier_modulus", real_or_null(o.multiplier_modulus)},
                        {"class", to_string(o.stability)}});
    }
    return list.dump(2);
}

std::string render_report_json(const RasterGrid& grid) {
    const Window& w = grid.window;
    json counts = json::object();
    for (const auto& [id, n] : grid.basin_counts()) counts[std::to_string(id)] = n;
    json doc{{"window",
              {{"re_min", w.re_min}, {"re_max", w.re_max}, {"im_min", w.im_min}, {"im_max", w.im_max},
               {"width", w.width}, {"height", w.height}}},
             {"cfg", {{"max_iter", grid.cfg.max_iter}, {"tol", grid.cfg.tol}}},
             {"basin_counts", counts},
             {"degenerate_pixels", grid.degenerate_pixels}};
    return doc.dump(2);
}

}  // namespace qdyn
