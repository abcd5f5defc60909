#include "theta/io.hpp"

#include "theta/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace theta {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw ParseError("instance: " + what); }

Point parse_point(const json& entry, std::size_t index)
{
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
        parse_fail("point " + std::to_string(index) + " is not a pair of numbers");
    }
    return {entry[0].get<double>(), entry[1].get<double>()};
}

PointId parse_index(const json& value, std::size_t constraint)
{
    if (value.is_number_unsigned()) {
        return value.get<PointId>();
    }
    if (value.is_number_integer()) {
        throw IndexOutOfRange("constraint " + std::to_string(constraint) + " has a negative index");
    }
    parse_fail("constraint " + std::to_string(constraint) + " has a non-integer index");
}

} // namespace

InstanceFile parse_instance(const std::string& text, bool validate)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(e.what());
    }
    if (!doc.is_object()) {
        parse_fail("top level must be an object");
    }

    InstanceFile out;
    if (const auto it = doc.find("version"); it != doc.end()) {
        if (!it->is_number_integer() || it->get<int>() != kInstanceFormatVersion) {
            parse_fail("unsupported version " + it->dump());
        }
    }
    const auto points = doc.find("points");
    if (points == doc.end() || !points->is_array()) {
        parse_fail("missing points array");
    }
    for (std::size_t i = 0; i < points->size(); ++i) {
        out.instance.points.push_back(parse_point((*points)[i], i));
    }
    if (const auto it = doc.find("constraints"); it != doc.end()) {
        if (!it->is_array()) {
            parse_fail("constraints must be an array");
        }
        for (std::size_t c = 0; c < it->size(); ++c) {
            const json& entry = (*it)[c];
            if (!entry.is_array() || entry.size() != 2) {
                parse_fail("constraint " + std::to_string(c) + " is not an index pair");
            }
            out.instance.constraints.push_back({parse_index(entry[0], c), parse_index(entry[1], c)});
        }
    }
    if (const auto it = doc.find("metadata"); it != doc.end()) {
        if (!it->is_object()) {
            parse_fail("metadata must be an object");
        }
        for (const auto& [key, value] : it->items()) {
            if (!value.is_string()) {
                parse_fail("metadata value for '" + key + "' is not a string");
            }
            out.metadata[key] = value.get<std::string>();
        }
    }
    if (validate) {
        validate_instance(out.instance);
    }
    return out;
}

namespace {

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

InstanceFile load_instance_file(const std::filesystem::path& path, bool validate)
{
    return parse_instance(read_text(path), validate);
}

Instance load_instance(const std::filesystem::path& path) { return load_instance_file(path).instance; }

std::string format_double(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string format_instance(const InstanceFile& file)
{
    std::string out = "{\n  \"version\": " + std::to_string(file.version) + ",\n  \"points\": [";
    const auto& inst = file.instance;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        out += i == 0 ? "\n    [" : ",\n    [";
        out += format_double(inst[i].x) + ", " + format_double(inst[i].y) + "]";
    }
    out += inst.size() == 0 ? "],\n" : "\n  ],\n";
    out += "  \"constraints\": [";
    for (std::size_t c = 0; c < inst.constraints.size(); ++c) {
        out += c == 0 ? "\n    [" : ",\n    [";
        out += std::to_string(inst.constraints[c].a) + ", " + std::to_string(inst.constraints[c].b) + "]";
    }
    out += inst.constraints.empty() ? "],\n" : "\n  ],\n";
    out += "  \"metadata\": {";
    bool first = true;
    for (const auto& [key, value] : file.metadata) {
        out += first ? "\n    " : ",\n    ";
        out += json(key).dump() + ": " + json(value).dump();
        first = false;
    }
    out += file.metadata.empty() ? "}\n}\n" : "\n  }\n}\n";
    return out;
}

std::string format_instance(const Instance& inst) { return format_instance(InstanceFile{kInstanceFormatVersion, inst, {}}); }

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << text;
    if (!out.flush()) {
        throw IoError("write failed for " + path.string());
    }
}

void save_instance(const InstanceFile& file, const std::filesystem::path& path)
{
    write_text(path, format_instance(file));
}

void save_instance(const Instance& inst, const std::filesystem::path& path)
{
    write_text(path, format_instance(inst));
}

std::string format_graph(const ThetaGraph& g, const ConeSystem& cones)
{
    ordered_json doc;
    doc["m"] = cones.cone_count();
    doc["vertices"] = g.size();
    ordered_json edges = ordered_json::array();
    for (const Edge& e : g.edges()) {
        ordered_json prov = ordered_json::array();
        for (const Provenance& p : e.provenance) {
            prov.push_back({{"source", p.source}, {"cone", p.cone}, {"subcone", p.subcone}});
        }
        edges.push_back({{"u", e.u}, {"v", e.v}, {"weight", e.weight}, {"provenance", prov}});
    }
    doc["edges"] = std::move(edges);
    ordered_json ties = ordered_json::array();
    for (const RayTie& t : g.ray_ties()) {
        ties.push_back({{"vertex", t.vertex}, {"point", t.point}, {"constraint", t.generator}});
    }
    doc["ray_ties"] = std::move(ties);
    return doc.dump(2) + "\n";
}

namespace {

ordered_json pair_json(const PairRecord& r)
{
    return {{"u", r.u},         {"w", r.w},         {"delta", r.delta},
            {"euclid", r.euclid}, {"alpha", r.alpha}, {"alpha_reverse", r.alpha_reverse},
            {"bound", r.bound}, {"ratio", r.ratio}, {"violation", r.violation}};
}

} // namespace

std::string format_report(const RatioReport& report, const ReportFormat& format)
{
    ordered_json doc;
    doc["m"] = report.m;
    doc["family"] = {{"k", report.k}, {"x", report.x}};
    doc["theta"] = report.theta;
    doc["bound"] = report.bound;
    doc["max_ratio"] = report.max_ratio;
    doc["max_bound"] = report.max_bound;
    doc["argmax"] = report.argmax ? ordered_json::array({report.argmax->first, report.argmax->second})
                                  : ordered_json(nullptr);
    doc["max_vis_ratio"] = report.max_vis_ratio;
    doc["edges"] = report.edge_count;
    doc["visible_pairs"] = report.pairs.size();
    ordered_json violations = ordered_json::array();
    for (const std::size_t i : report.violations) {
        violations.push_back(pair_json(report.pairs[i]));
    }
    doc["violations"] = std::move(violations);
    ordered_json vis = ordered_json::array();
    for (const VisViolation& v : report.vis_violations) {
        vis.push_back({{"u", v.u},
                       {"w", v.w},
                       {"graph_distance", v.graph_distance == kUnreachable ? ordered_json(nullptr)
                                                                           : ordered_json(v.graph_distance)},
                       {"vis_distance", v.vis_distance}});
    }
    doc["vis_violations"] = std::move(vis);
    ordered_json mismatches = ordered_json::array();
    for (const auto& [u, w] : report.connectivity_mismatches) {
        mismatches.push_back({u, w});
    }
    doc["connectivity_mismatches"] = std::move(mismatches);
    if (format.per_pair) {
        ordered_json pairs = ordered_json::array();
        for (const PairRecord& r : report.pairs) {
            pairs.push_back(pair_json(r));
        }
        doc["pairs"] = std::move(pairs);
    }
    if (format.elapsed_ms) {
        doc["timing"] = {{"elapsed_ms", *format.elapsed_ms}};
    }
    return doc.dump(2) + "\n";
}

namespace {

std::string fixed(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    std::string s(buf, res.ptr);
    if (s == "-0.00") {
        s = "0.00";
    }
    return s;
}

struct Viewport {
    double min_x = 0, max_y = 0, scale = 1, width = 0, height = 0;

    double sx(double x) const { return (x - min_x) * scale; }
    double sy(double y) const { return (max_y - y) * scale; }
};

Viewport viewport(const Instance& inst)
{
    constexpr double canvas = 800.0;
    double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
    if (inst.size() > 0) {
        lo_x = hi_x = inst[0].x;
        lo_y = hi_y = inst[0].y;
        for (const Point p : inst.points) {
            lo_x = std::min(lo_x, p.x);
            hi_x = std::max(hi_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_y = std::max(hi_y, p.y);
        }
    }
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    const double margin = 0.05 * span;
    Viewport v;
    v.min_x = lo_x - margin;
    v.max_y = hi_y + margin;
    v.scale = canvas / (span + 2 * margin);
    v.width = (hi_x - lo_x + 2 * margin) * v.scale;
    v.height = (hi_y - lo_y + 2 * margin) * v.scale;
    return v;
}

std::string line(const Viewport& v, Point a, Point b, const char* cls)
{
    return std::string("    <line class=\"") + cls + "\" x1=\"" + fixed(v.sx(a.x)) + "\" y1=\"" + fixed(v.sy(a.y)) +
           "\" x2=\"" + fixed(v.sx(b.x)) + "\" y2=\"" + fixed(v.sy(b.y)) + "\"/>\n";
}

std::string circle(const Viewport& v, Point p, const char* cls, double r)
{
    return std::string("    <circle class=\"") + cls + "\" cx=\"" + fixed(v.sx(p.x)) + "\" cy=\"" +
           fixed(v.sy(p.y)) + "\" r=\"" + fixed(r) + "\"/>\n";
}

} // namespace

std::string svg_string(const Instance& inst, const ThetaGraph& g, const RatioReport* report)
{
    const Viewport v = viewport(inst);
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fixed(v.width) + "\" height=\"" +
           fixed(v.height) + "\" viewBox=\"0 0 " + fixed(v.width) + " " + fixed(v.height) + "\">\n";
    out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    out += "  <g id=\"edges\" stroke=\"#4a6fa5\" stroke-width=\"1\">\n";
    for (const Edge& e : g.edges()) {
        out += line(v, inst[e.u], inst[e.v], "edge");
    }
    out += "  </g>\n";

    out += "  <g id=\"constraints\" stroke=\"black\" stroke-width=\"4\" stroke-linecap=\"round\">\n";
    for (const Segment& s : inst.constraints) {
        out += line(v, inst[s.a], inst[s.b], "constraint");
    }
    out += "  </g>\n";

    if (report && report->argmax) {
        const auto [a, b] = *report->argmax;
        out += "  <g id=\"worst\" stroke=\"#d62728\" fill=\"none\" stroke-width=\"2\">\n";
        out += line(v, inst[a], inst[b], "worst");
        out += circle(v, inst[a], "worst", 7);
        out += circle(v, inst[b], "worst", 7);
        out += "  </g>\n";
    }

    out += "  <g id=\"points\" fill=\"black\">\n";
    for (const Point p : inst.points) {
        out += circle(v, p, "point", 3);
    }
    out += "  </g>\n</svg>\n";
    return out;
}

void render_svg(const Instance& inst, const ThetaGraph& g, const RatioReport* report,
                const std::filesystem::path& path)
{
    write_text(path, svg_string(inst, g, report));
}

} // namespace theta
