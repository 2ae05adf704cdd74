#pragma once

#include <filesystem>
#include <string>

#include <yaml-cpp/yaml.h>

namespace queuerl::yaml_util {

std::string read_text(const std::filesystem::path& path, const char* what);

// Parses a document that must be a mapping. Throws ParseError.
YAML::Node load_mapping(const std::string& text, const char* what);

std::string where(const YAML::Node& node, const std::string& field);

template <typename T>
T as(const YAML::Node& node, const std::string& field, const char* expected);

}  // namespace queuerl::yaml_util
