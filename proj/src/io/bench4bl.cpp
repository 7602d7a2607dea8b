#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <sstream>

#include "sabl/dataio.hpp"
#include "sabl/error.hpp"
#include "sabl/text_util.hpp"

namespace sabl::io {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// "org.foo.Bar.java" -> "org/foo/Bar.java"; paths that already contain a
// slash are only normalized.
std::string dotted_to_path(const std::string& name) {
  std::string n = normalize_module_path(trim(name));
  if (n.find('/') != std::string::npos) return n;
  std::string ext;
  auto dot = n.rfind('.');
  if (dot != std::string::npos && (n.compare(dot, std::string::npos, ".java") == 0)) {
    ext = n.substr(dot);
    n.erase(dot);
  }
  for (char& c : n) {
    if (c == '.') c = '/';
  }
  return n + ext;
}

}  // namespace

std::vector<BugReportRecord> convert_bench4bl_bugs(const fs::path& xml, const Bench4BLOptions& options,
                                                   std::vector<std::string>& warnings) {
  SanitizedText text = sanitize_utf8(read_file(xml.string()));
  if (text.replacements > 0) {
    warnings.push_back(xml.string() + ": replaced " + std::to_string(text.replacements) +
                       " invalid UTF-8 sequence(s)");
  }
  pt::ptree tree;
  std::istringstream in(text.text);
  try {
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw InputError(xml.string() + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  const pt::ptree* root = nullptr;
  for (const char* name : {"bugrepository", "BugRepository"}) {
    if (auto r = tree.get_child_optional(name)) {
      root = &*r;
      break;
    }
  }
  if (root == nullptr) throw InputError(xml.string() + ": no <bugrepository> root element");

  std::string prefix = options.source_prefix;
  if (!prefix.empty() && prefix.back() != '/') prefix += '/';

  std::vector<BugReportRecord> out;
  std::set<std::string> ids;
  for (const auto& [tag, bug] : *root) {
    if (tag != "bug") continue;
    BugReportRecord rec;
    rec.id = trim(bug.get<std::string>("<xmlattr>.id", ""));
    if (rec.id.empty()) {
      warnings.push_back(xml.string() + ": <bug> without id skipped");
      continue;
    }
    rec.summary = trim(bug.get<std::string>("buginformation.summary", ""));
    rec.description = trim(bug.get<std::string>("buginformation.description", ""));
    if (auto files = bug.get_child_optional("fixedFiles")) {
      for (const auto& [ftag, file] : *files) {
        if (ftag != "file") continue;
        std::string path = dotted_to_path(file.get_value<std::string>());
        if (!path.empty()) rec.gold.insert(prefix + path);
      }
    }
    if (rec.gold.empty()) {
      warnings.push_back(xml.string() + ": bug " + rec.id + " has no fixed files; skipped");
      continue;
    }
    if (!ids.insert(rec.id).second) {
      warnings.push_back(xml.string() + ": duplicate bug " + rec.id + "; later entry skipped");
      continue;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace sabl::io
