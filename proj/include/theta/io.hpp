#pragma once

#include "theta/theta_graph.hpp"
#include "theta/verify.hpp"
#include "theta/visibility.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace theta {

inline constexpr int kInstanceFormatVersion = 1;

struct InstanceFile {
    int version = kInstanceFormatVersion;
    Instance instance;
    std::map<std::string, std::string> metadata;
};

/// Parses the JSON instance format. With `validate` set, index range and
/// planarity are checked (IndexOutOfRange / InvalidInstance); malformed
/// documents always raise ParseError.
InstanceFile parse_instance(const std::string& text, bool validate = true);
InstanceFile load_instance_file(const std::filesystem::path& path, bool validate = true);
Instance load_instance(const std::filesystem::path& path);

/// Canonical text: fixed key order, one point per line, shortest
/// round-trip decimals.
std::string format_instance(const InstanceFile& file);
std::string format_instance(const Instance& inst);
void save_instance(const InstanceFile& file, const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

/// Shortest decimal that parses back to exactly `value`.
std::string format_double(double value);

std::string format_graph(const ThetaGraph& g, const ConeSystem& cones);

struct ReportFormat {
    bool per_pair = false;
    std::optional<double> elapsed_ms;
};

std::string format_report(const RatioReport& report, const ReportFormat& format = {});

/// SVG 1.1 drawing: points as dots, constraints thick, graph edges thin,
/// the report's argmax pair highlighted.
std::string svg_string(const Instance& inst, const ThetaGraph& g, const RatioReport* report = nullptr);
void render_svg(const Instance& inst, const ThetaGraph& g, const RatioReport* report,
                const std::filesystem::path& path);

/// Writes `text` to `path`; throws IoError.
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace theta
