#include "icm/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "icm/contract.hpp"
#include "icm/error.hpp"
#include "icm/fs_util.hpp"

namespace fs = std::filesystem;

namespace icm {

int layer_number(Layer layer) {
  switch (layer) {
    case Layer::Identity: return 0;
    case Layer::Routing: return 1;
    case Layer::Contract: return 2;
    case Layer::Reference: return 3;
    case Layer::Working: return 4;
    default: return -1;
  }
}

const char* layer_name(Layer layer) {
  switch (layer) {
    case Layer::Identity: return "L0_identity";
    case Layer::Routing: return "L1_routing";
    case Layer::Contract: return "L2_contract";
    case Layer::Reference: return "L3_reference";
    case Layer::Working: return "L4_working";
    case Layer::EngineState: return "engine_state";
    default: return "unclassified";
  }
}

const char* layer_label(Layer layer) {
  switch (layer) {
    case Layer::Identity: return "identity";
    case Layer::Routing: return "routing";
    case Layer::Contract: return "contract";
    case Layer::Reference: return "reference";
    case Layer::Working: return "working";
    case Layer::EngineState: return "engine_state";
    default: return "unclassified";
  }
}

namespace {

// Stage folder pattern: <two-or-more digits>_<slug>.
std::optional<std::pair<int, std::string>> parse_stage_dir_name(
    const std::string& name) {
  std::size_t digits = 0;
  while (digits < name.size() &&
         std::isdigit(static_cast<unsigned char>(name[digits])))
    ++digits;
  if (digits < 2) return std::nullopt;
  if (digits + 1 >= name.size() || name[digits] != '_') return std::nullopt;
  int ordinal = 0;
  auto res = std::from_chars(name.data(), name.data() + digits, ordinal);
  if (res.ec != std::errc() || ordinal <= 0) return std::nullopt;
  return std::make_pair(ordinal, name.substr(digits + 1));
}

bool nonempty_file(const fs::path& p) {
  std::error_code ec;
  return fs::is_regular_file(p, ec) && fs::file_size(p, ec) > 0;
}

}  // namespace

const StageRef* Workspace::find_stage(const std::string& key) const {
  for (const auto& s : stages)
    if (s.dir_name == key) return &s;
  for (const auto& s : stages)
    if (s.name == key) return &s;
  int ordinal = 0;
  auto res = std::from_chars(key.data(), key.data() + key.size(), ordinal);
  if (res.ec == std::errc() && res.ptr == key.data() + key.size()) {
    for (const auto& s : stages)
      if (s.ordinal == ordinal) return &s;
  }
  return nullptr;
}

std::string Workspace::rel(const fs::path& p) const {
  return rel_str(root, p);
}

Workspace discover(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    fail(Errc::NotADirectory, root.string() + " is not a directory");

  Workspace ws;
  ws.root = fs::absolute(root).lexically_normal();
  if (ws.root.filename() == ".") ws.root = ws.root.parent_path();

  ws.identity_file = ws.root / "CLAUDE.md";
  if (!nonempty_file(ws.identity_file))
    fail(Errc::MissingIdentityFile,
         "no nonempty CLAUDE.md at workspace root " + ws.root.string());

  ws.routing_file = ws.root / "CONTEXT.md";
  if (!nonempty_file(ws.routing_file))
    fail(Errc::MissingRoutingFile,
         "no nonempty CONTEXT.md at workspace root " + ws.root.string());

  ws.state_dir = ws.root / ".icm";

  // Stage folders live under stages/ when it exists, else at root.
  fs::path stage_parent = ws.root;
  if (fs::is_directory(ws.root / "stages")) {
    stage_parent = ws.root / "stages";
    ws.stages_under_subdir = true;
  }

  for (const auto& entry : fs::directory_iterator(stage_parent)) {
    if (!entry.is_directory()) continue;
    const std::string name = entry.path().filename().string();
    auto parsed = parse_stage_dir_name(name);
    if (!parsed) continue;
    StageRef s;
    s.ordinal = parsed->first;
    s.name = parsed->second;
    s.dir_name = name;
    s.dir = entry.path().lexically_normal();
    s.contract_file = s.dir / "CONTEXT.md";
    if (fs::is_directory(s.dir / "references"))
      s.references_dir = s.dir / "references";
    s.output_dir = s.dir / "output";
    ws.stages.push_back(std::move(s));
  }
  std::sort(ws.stages.begin(), ws.stages.end(),
            [](const StageRef& a, const StageRef& b) {
              if (a.ordinal != b.ordinal) return a.ordinal < b.ordinal;
              return a.dir_name < b.dir_name;
            });

  for (const char* d : {"_config", "shared"}) {
    if (fs::is_directory(ws.root / d)) ws.config_dirs.push_back(ws.root / d);
  }
  return ws;
}

std::optional<int> producing_stage(const Workspace& ws, const fs::path& path) {
  const fs::path p = path.lexically_normal();
  for (const auto& s : ws.stages) {
    if (lexically_under(p, s.output_dir)) return s.ordinal;
  }
  return std::nullopt;
}

LayerClass classify(const fs::path& path, const Workspace& ws) {
  const fs::path p =
      (path.is_absolute() ? path : ws.root / path).lexically_normal();
  if (!lexically_under(p, ws.root))
    fail(Errc::PathOutsideWorkspace, p.string() + " is outside " +
                                         ws.root.string());

  if (lexically_under(p, ws.state_dir))
    return {Layer::EngineState, "engine-owned state"};
  if (has_hidden_component(p, ws.root))
    return {Layer::Unclassified, "hidden — engine-ignored"};

  if (p == ws.identity_file) return {Layer::Identity, "global identity"};
  if (p == ws.routing_file) return {Layer::Routing, "workspace routing"};

  for (const auto& s : ws.stages) {
    if (p == s.contract_file) return {Layer::Contract, "stage contract"};
    if (!lexically_under(p, s.dir)) continue;
    if (lexically_under(p, s.dir / "references")) {
      if (p.filename() == "CONTEXT.md")
        return {Layer::Reference, "routing within reference collection"};
      return {Layer::Reference, "reference — internalize as constraints"};
    }
    if (lexically_under(p, s.output_dir))
      return {Layer::Working, "working — process as input"};
    return {Layer::Working,
            "working — process as input (unrecognized stage file)"};
  }

  for (const char* d : {"_config", "shared", "setup"}) {
    if (lexically_under(p, ws.root / d)) {
      if (p.filename() == "CONTEXT.md")
        return {Layer::Reference, "routing within reference collection"};
      return {Layer::Reference, "reference — internalize as constraints"};
    }
  }

  return {Layer::Unclassified, "no classification rule matches"};
}

std::vector<fs::path> list_files(const Workspace& ws) {
  std::vector<fs::path> out;
  for (fs::recursive_directory_iterator it(ws.root), end; it != end; ++it) {
    const std::string name = it->path().filename().string();
    if (!name.empty() && name[0] == '.') {
      if (it->is_directory()) it.disable_recursion_pending();
      continue;
    }
    if (it->is_regular_file()) out.push_back(it->path().lexically_normal());
  }
  std::sort(out.begin(), out.end(), [&](const fs::path& a, const fs::path& b) {
    return ws.rel(a) < ws.rel(b);
  });
  return out;
}

std::vector<Violation> validate(const Workspace& ws) {
  std::vector<Violation> out;
  auto add = [&](Severity sev, const fs::path& path, std::string rule,
                 std::string msg) {
    out.push_back({sev, path, std::move(rule), std::move(msg)});
  };

  for (std::size_t i = 1; i < ws.stages.size(); ++i) {
    if (ws.stages[i].ordinal == ws.stages[i - 1].ordinal) {
      add(Severity::Error, ws.stages[i].dir, "DuplicateOrdinal",
          "stage ordinal " + std::to_string(ws.stages[i].ordinal) +
              " is also used by " + ws.stages[i - 1].dir_name);
    }
  }

  for (const auto& stage : ws.stages) {
    if (!nonempty_file(stage.contract_file)) {
      add(Severity::Error, stage.contract_file, "MissingStageContract",
          "stage " + stage.dir_name + " has no CONTEXT.md contract");
      continue;
    }
    ParseResult parsed = parse_contract(read_file(stage.contract_file), stage);
    if (!parsed.ok()) {
      const ParseError& first = parsed.errors.front();
      add(Severity::Error, stage.contract_file, "MalformedStageContract",
          first.code + " at line " + std::to_string(first.line) + ": " +
              first.message);
      continue;
    }
    if (!fs::is_directory(stage.output_dir)) {
      add(Severity::Warning, stage.output_dir, "MissingOutputDir",
          "stage " + stage.dir_name + " has no output/ directory");
    }
    for (const auto& in : parsed.contract->inputs) {
      const fs::path target = lexical_resolve(stage.dir, in.rel_path);
      if (!lexically_under(target, ws.root)) {
        add(Severity::Error, stage.contract_file, "InputEscapesWorkspace",
            "input '" + in.rel_path + "' (line " + std::to_string(in.line) +
                ") resolves outside the workspace");
        continue;
      }
      if (auto producer = producing_stage(ws, target)) {
        if (*producer == stage.ordinal) {
          add(Severity::Error, stage.contract_file, "SelfReference",
              "stage " + stage.dir_name + " reads its own output: " +
                  in.rel_path);
        } else if (*producer > stage.ordinal) {
          add(Severity::Error, stage.contract_file, "ForwardReference",
              "stage " + stage.dir_name + " reads output of later stage " +
                  std::to_string(*producer) + ": " + in.rel_path);
        }
      }
    }
  }

  for (const fs::path& f : list_files(ws)) {
    const LayerClass cls = classify(f, ws);
    if (cls.layer == Layer::Unclassified) {
      add(Severity::Warning, f, "UnclassifiedFile",
          "file matches no classification rule");
    } else if (cls.layer == Layer::Working &&
               cls.role_note.find("unrecognized") != std::string::npos) {
      add(Severity::Warning, f, "UnknownStageFile",
          "unexpected file in stage folder; classified as working material");
    } else if (cls.role_note == "routing within reference collection") {
      add(Severity::Warning, f, "NestedRoutingFile",
          "routing file inside a reference collection; classified as Layer 3");
    }
  }

  std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    const std::string ap = a.path.generic_string();
    const std::string bp = b.path.generic_string();
    if (ap != bp) return ap < bp;
    return a.rule_id < b.rule_id;
  });
  return out;
}

}  // namespace icm
