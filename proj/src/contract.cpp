#include "icm/contract.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "icm/error.hpp"
#include "icm/fs_util.hpp"
#include "icm/markdown.hpp"

namespace fs = std::filesystem;

namespace icm {

const char* verify_kind_name(VerifyKind k) {
  switch (k) {
    case VerifyKind::Exists: return "exists";
    case VerifyKind::MaxWords: return "max-words";
    case VerifyKind::MarkersResolve: return "markers-resolve";
    case VerifyKind::HeadingsCover: return "headings-cover";
  }
  return "exists";
}

std::optional<VerifyKind> verify_kind_from_name(const std::string& name) {
  if (name == "exists") return VerifyKind::Exists;
  if (name == "max-words") return VerifyKind::MaxWords;
  if (name == "markers-resolve") return VerifyKind::MarkersResolve;
  if (name == "headings-cover") return VerifyKind::HeadingsCover;
  return std::nullopt;
}

std::size_t verify_kind_arity(VerifyKind k) {
  switch (k) {
    case VerifyKind::Exists: return 1;
    case VerifyKind::MaxWords: return 2;
    case VerifyKind::MarkersResolve: return 1;
    case VerifyKind::HeadingsCover: return 2;
  }
  return 1;
}

bool structurally_equal(const StageContract& a, const StageContract& b) {
  return a.inputs == b.inputs && a.process == b.process &&
         a.outputs == b.outputs && a.verify == b.verify;
}

namespace {

struct SectionBlock {
  std::size_t heading_line = 0;        // 1-based
  std::vector<std::size_t> lines;      // indices into the line table
  bool present = false;
};

std::string_view rstrip(std::string_view s) {
  std::size_t e = s.size();
  while (e > 0 && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(0, e);
}

bool consume(std::string_view& s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return false;
  s.remove_prefix(prefix.size());
  return true;
}

// `- Layer <3|4> (<reference|working>): <path>[#<anchor>]`
std::optional<InputRef> parse_input_line(std::string_view line,
                                         std::size_t line_no,
                                         std::vector<ParseError>& errors) {
  std::string_view s = rstrip(line);
  auto malformed = [&](const std::string& why) -> std::optional<InputRef> {
    errors.push_back({"MalformedInputLine", line_no, why});
    return std::nullopt;
  };
  if (!consume(s, "- Layer ")) return malformed("expected '- Layer <3|4> (...)'");
  if (s.empty() || (s[0] != '3' && s[0] != '4'))
    return malformed("layer must be 3 or 4");
  const int layer = s[0] - '0';
  s.remove_prefix(1);
  if (!consume(s, " (")) return malformed("expected ' (' after layer number");
  std::string keyword;
  if (consume(s, "reference")) keyword = "reference";
  else if (consume(s, "working")) keyword = "working";
  else return malformed("layer keyword must be 'reference' or 'working'");
  if (!consume(s, "): ")) return malformed("expected '): ' after keyword");
  if ((layer == 3) != (keyword == "reference")) {
    errors.push_back({"LayerKeywordMismatch", line_no,
                      "Layer " + std::to_string(layer) + " (" + keyword +
                          "): layer 3 is reference, layer 4 is working"});
    return std::nullopt;
  }
  std::string_view rest = md::trim(s);
  if (rest.empty()) return malformed("missing path");
  InputRef ref;
  ref.declared_layer = layer;
  ref.layer_keyword = keyword;
  ref.line = line_no;
  if (auto hash = rest.find('#'); hash != std::string_view::npos) {
    ref.rel_path = std::string(rest.substr(0, hash));
    std::string anchor(rest.substr(hash + 1));
    if (ref.rel_path.empty() || anchor.empty())
      return malformed("anchor form is <path>#<anchor>");
    ref.section_scope = std::move(anchor);
  } else {
    ref.rel_path = std::string(rest);
  }
  if (ref.rel_path.front() == '/')
    return malformed("input paths must be relative");
  return ref;
}

// `- <filename> -> <dir>/`
std::optional<OutputRef> parse_output_line(std::string_view line,
                                           std::size_t line_no,
                                           std::vector<ParseError>& errors) {
  std::string_view s = rstrip(line);
  auto malformed = [&](const std::string& why) -> std::optional<OutputRef> {
    errors.push_back({"MalformedOutputLine", line_no, why});
    return std::nullopt;
  };
  if (!consume(s, "- ")) return malformed("expected '- <filename> -> <dir>/'");
  auto arrow = s.find(" -> ");
  if (arrow == std::string_view::npos) return malformed("expected ' -> '");
  OutputRef ref;
  ref.filename = std::string(md::trim(s.substr(0, arrow)));
  ref.dest = std::string(md::trim(s.substr(arrow + 4)));
  ref.line = line_no;
  if (ref.filename.empty() || ref.filename.find('/') != std::string::npos)
    return malformed("output name must be a bare filename");
  if (ref.dest.empty() || ref.dest.back() != '/')
    return malformed("destination must end with '/'");
  if (ref.dest != "output/" && ref.dest.rfind("output/", 0) != 0)
    return malformed("destination must be output/ or a subdirectory of it");
  if (ref.dest.find("..") != std::string::npos)
    return malformed("destination must not contain '..'");
  return ref;
}

// `- <kind>: <args>` with per-kind arity.
std::optional<VerifyCheck> parse_verify_line(std::string_view line,
                                             std::size_t line_no,
                                             std::vector<ParseError>& errors) {
  std::string_view s = rstrip(line);
  auto malformed = [&](const std::string& why) -> std::optional<VerifyCheck> {
    errors.push_back({"MalformedVerifyLine", line_no, why});
    return std::nullopt;
  };
  if (!consume(s, "- ")) return malformed("expected '- <kind>: <args>'");
  auto colon = s.find(": ");
  if (colon == std::string_view::npos) return malformed("expected '<kind>: '");
  const std::string kind_name(s.substr(0, colon));
  auto kind = verify_kind_from_name(kind_name);
  if (!kind) return malformed("unknown check kind '" + kind_name + "'");
  std::string_view rest = md::trim(s.substr(colon + 2));
  if (rest.empty()) return malformed("missing arguments");

  VerifyCheck check;
  check.kind = *kind;
  check.line = line_no;
  switch (*kind) {
    case VerifyKind::Exists:
    case VerifyKind::MarkersResolve:
      if (rest.find(' ') != std::string_view::npos)
        return malformed(kind_name + " takes exactly one path");
      check.args = {std::string(rest)};
      break;
    case VerifyKind::MaxWords: {
      auto space = rest.rfind(' ');
      if (space == std::string_view::npos)
        return malformed("max-words takes '<path> <N>'");
      std::string_view num = md::trim(rest.substr(space + 1));
      unsigned long n = 0;
      auto res = std::from_chars(num.data(), num.data() + num.size(), n);
      if (res.ec != std::errc() || res.ptr != num.data() + num.size())
        return malformed("word limit must be a nonnegative integer");
      check.args = {std::string(md::trim(rest.substr(0, space))),
                    std::string(num)};
      break;
    }
    case VerifyKind::HeadingsCover: {
      auto from = rest.find(" from ");
      if (from == std::string_view::npos)
        return malformed("headings-cover takes '<path> from <source>'");
      std::string p(md::trim(rest.substr(0, from)));
      std::string src(md::trim(rest.substr(from + 6)));
      if (p.empty() || src.empty())
        return malformed("headings-cover takes '<path> from <source>'");
      check.args = {std::move(p), std::move(src)};
      break;
    }
  }
  return check;
}

std::vector<ProcessSegment> parse_process(
    std::string_view text, const std::vector<md::Line>& lines,
    const std::vector<std::size_t>& body) {
  // Chunks between `<!-- icm:break -->` lines. Blank-edge lines are trimmed;
  // empty chunks (leading, trailing, or between adjacent markers) coalesce.
  std::vector<std::vector<std::string>> chunks(1);
  std::vector<ProcessSegment> segments;
  auto flush = [&](bool breakpoint_after) {
    auto& chunk = chunks.back();
    std::size_t b = 0, e = chunk.size();
    while (b < e && md::trim(chunk[b]).empty()) ++b;
    while (e > b && md::trim(chunk[e - 1]).empty()) --e;
    if (b < e) {
      std::string joined;
      for (std::size_t i = b; i < e; ++i) {
        if (i > b) joined += '\n';
        joined += chunk[i];
      }
      if (!segments.empty())
        segments.back().followed_by_breakpoint = true;
      segments.push_back({static_cast<int>(segments.size()), std::move(joined),
                          false});
    }
    (void)breakpoint_after;
    chunks.emplace_back();
  };
  for (std::size_t idx : body) {
    std::string_view lv = md::line_view(text, lines[idx]);
    if (rstrip(lv) == kBreakpointMarker) {
      flush(true);
    } else {
      chunks.back().emplace_back(lv);
    }
  }
  flush(false);
  return segments;
}

}  // namespace

ParseResult parse_contract(const std::string& text, const StageRef& stage) {
  ParseResult result;
  const auto lines = md::scan_lines(text);
  const std::size_t eof_line = lines.empty() ? 1 : lines.back().number;

  SectionBlock inputs, process, outputs, verify;
  SectionBlock* current = nullptr;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view lv = rstrip(md::line_view(text, lines[i]));
    const bool is_l2 = lv.rfind("## ", 0) == 0;
    const bool is_l1 = !is_l2 && lv.rfind("# ", 0) == 0;
    if (is_l2 || is_l1) {
      current = nullptr;  // any level-1/2 heading ends the open section
      SectionBlock* target = nullptr;
      if (lv == "## Inputs") target = &inputs;
      else if (lv == "## Process") target = &process;
      else if (lv == "## Outputs") target = &outputs;
      else if (lv == "## Verify") target = &verify;
      if (target) {
        if (target->present) {
          result.errors.push_back(
              {"DuplicateSection", lines[i].number,
               std::string(lv.substr(3)) + " appears more than once"});
        } else {
          target->present = true;
          target->heading_line = lines[i].number;
          current = target;
        }
      }
      continue;
    }
    if (current) current->lines.push_back(i);
  }

  for (auto [block, name] : {std::pair{&inputs, "Inputs"},
                             std::pair{&process, "Process"},
                             std::pair{&outputs, "Outputs"}}) {
    if (!block->present)
      result.errors.push_back({"MissingSection", eof_line,
                               std::string("no '## ") + name + "' section"});
  }

  StageContract contract;
  contract.stage = stage;
  contract.raw_text = text;

  for (std::size_t idx : inputs.lines) {
    std::string_view lv = md::line_view(text, lines[idx]);
    if (md::trim(lv).empty()) continue;
    if (auto ref = parse_input_line(lv, lines[idx].number, result.errors))
      contract.inputs.push_back(std::move(*ref));
  }
  for (std::size_t idx : outputs.lines) {
    std::string_view lv = md::line_view(text, lines[idx]);
    if (md::trim(lv).empty()) continue;
    if (auto ref = parse_output_line(lv, lines[idx].number, result.errors))
      contract.outputs.push_back(std::move(*ref));
  }
  for (std::size_t idx : verify.lines) {
    std::string_view lv = md::line_view(text, lines[idx]);
    if (md::trim(lv).empty()) continue;
    if (auto check = parse_verify_line(lv, lines[idx].number, result.errors))
      contract.verify.push_back(std::move(*check));
  }
  contract.process = parse_process(text, lines, process.lines);

  if (result.errors.empty()) result.contract = std::move(contract);
  return result;
}

std::string normalize(const StageContract& c) {
  std::string out;
  out += "## Inputs\n";
  for (const auto& in : c.inputs) {
    out += "- Layer " + std::to_string(in.declared_layer) + " (" +
           in.layer_keyword + "): " + in.rel_path;
    if (in.section_scope) out += "#" + *in.section_scope;
    out += '\n';
  }
  out += "\n## Process\n";
  for (const auto& seg : c.process) {
    out += seg.text;
    out += '\n';
    if (seg.followed_by_breakpoint) {
      out += kBreakpointMarker;
      out += '\n';
    }
  }
  out += "\n## Outputs\n";
  for (const auto& o : c.outputs) {
    out += "- " + o.filename + " -> " + o.dest + '\n';
  }
  if (!c.verify.empty()) {
    out += "\n## Verify\n";
    for (const auto& v : c.verify) {
      out += std::string("- ") + verify_kind_name(v.kind) + ": ";
      if (v.kind == VerifyKind::HeadingsCover) {
        out += v.args[0] + " from " + v.args[1];
      } else {
        out += v.args[0];
        for (std::size_t i = 1; i < v.args.size(); ++i) out += " " + v.args[i];
      }
      out += '\n';
    }
  }
  return out;
}

namespace {

// Recursive walk that flattens at output/ boundaries: an output directory
// contributes its immediate files only.
void expand_dir(const fs::path& dir, std::vector<fs::path>& out) {
  std::vector<fs::path> entries;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (!name.empty() && name[0] == '.') continue;
    entries.push_back(entry.path());
  }
  std::sort(entries.begin(), entries.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.generic_string() < b.generic_string();
            });
  for (const auto& p : entries) {
    if (fs::is_directory(p)) {
      if (p.filename() == "output") {
        for (const auto& f : list_dir_files(p, /*recursive=*/false))
          out.push_back(f);
      } else {
        expand_dir(p, out);
      }
    } else if (fs::is_regular_file(p)) {
      out.push_back(p.lexically_normal());
    }
  }
}

}  // namespace

std::vector<ResolvedInput> resolve_inputs(const StageContract& contract,
                                          const Workspace& ws) {
  std::vector<ResolvedInput> resolved;
  std::set<std::pair<std::string, std::string>> seen;

  for (std::size_t i = 0; i < contract.inputs.size(); ++i) {
    const InputRef& in = contract.inputs[i];
    const fs::path target = lexical_resolve(contract.stage.dir, in.rel_path);
    if (!lexically_under(target, ws.root))
      fail(Errc::EscapesWorkspace,
           "input '" + in.rel_path + "' resolves outside the workspace");

    std::vector<fs::path> files;
    if (fs::is_directory(target)) {
      if (in.section_scope)
        fail(Errc::InputNotFound,
             "'" + in.rel_path + "' is a directory; section anchors apply to "
             "files only");
      if (target.filename() == "output") {
        files = list_dir_files(target, /*recursive=*/false);
      } else {
        expand_dir(target, files);
      }
    } else if (fs::is_regular_file(target)) {
      files = {target};
    } else {
      fail(Errc::InputNotFound, "input '" + in.rel_path + "' not found (from " +
                                    contract.stage.dir_name + ")");
    }

    for (const fs::path& f : files) {
      const LayerClass cls = classify(f, ws);
      const int actual = layer_number(cls.layer);
      if (actual != in.declared_layer)
        fail(Errc::LayerMismatch,
             "input '" + in.rel_path + "' declares Layer " +
                 std::to_string(in.declared_layer) + " but " + ws.rel(f) +
                 " classifies as " + layer_name(cls.layer));
      ResolvedInput r;
      r.path = f;
      r.rel_to_root = ws.rel(f);
      r.cls = cls;
      r.anchor = in.section_scope;
      r.decl_index = static_cast<int>(i);
      r.declared_layer = in.declared_layer;
      if (seen.emplace(r.rel_to_root, r.anchor.value_or("")).second)
        resolved.push_back(std::move(r));
    }
  }
  return resolved;
}

}  // namespace icm
