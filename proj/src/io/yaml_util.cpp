#include "queuerl/io/yaml_util.hpp"

#include <fstream>
#include <sstream>

#include "queuerl/errors.hpp"

namespace queuerl::yaml_util {

std::string read_text(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw FileError(std::string("cannot open ") + what + " '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

YAML::Node load_mapping(const std::string& text, const char* what) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string(what) + ": line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (root.IsNull()) throw ParseError(std::string(what) + " is empty");
  if (!root.IsMap()) throw ParseError(std::string(what) + ": top level must be a mapping");
  return root;
}

std::string where(const YAML::Node& node, const std::string& field) {
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) return "field '" + field + "'";
  return "line " + std::to_string(mark.line + 1) + ", field '" + field + "'";
}

template <typename T>
T as(const YAML::Node& node, const std::string& field, const char* expected) {
  if (!node.IsDefined() || node.IsNull()) throw ParseError(where(node, field) + ": missing value");
  if (!node.IsScalar()) throw ParseError(where(node, field) + ": expected " + expected);
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ParseError(where(node, field) + ": expected " + expected + ", got '" + node.Scalar() + "'");
  }
}

template int as<int>(const YAML::Node&, const std::string&, const char*);
template long long as<long long>(const YAML::Node&, const std::string&, const char*);
template unsigned long long as<unsigned long long>(const YAML::Node&, const std::string&, const char*);
template double as<double>(const YAML::Node&, const std::string&, const char*);
template bool as<bool>(const YAML::Node&, const std::string&, const char*);
template std::string as<std::string>(const YAML::Node&, const std::string&, const char*);

}  // namespace queuerl::yaml_util
