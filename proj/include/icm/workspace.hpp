#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace icm {

// The five-layer hierarchy plus the two buckets that fall outside it.
enum class Layer {
  Identity,     // L0: CLAUDE.md
  Routing,      // L1: root CONTEXT.md
  Contract,     // L2: stage CONTEXT.md
  Reference,    // L3: references/, _config/, shared/, setup/
  Working,      // L4: stage output/ and other per-run stage files
  EngineState,  // .icm/
  Unclassified,
};

// 0..4 for the context layers, -1 otherwise.
int layer_number(Layer layer);
const char* layer_name(Layer layer);   // "L0_identity", ...
const char* layer_label(Layer layer);  // "identity", "routing", ...

struct LayerClass {
  Layer layer = Layer::Unclassified;
  std::string role_note;
};

struct StageRef {
  int ordinal = 0;
  std::string name;      // slug after the digit prefix
  std::string dir_name;  // e.g. "01_research"
  std::filesystem::path dir;
  std::filesystem::path contract_file;  // <dir>/CONTEXT.md
  std::optional<std::filesystem::path> references_dir;
  std::filesystem::path output_dir;  // <dir>/output
};

enum class Severity { Error, Warning };

struct Violation {
  Severity severity = Severity::Error;
  std::filesystem::path path;
  std::string rule_id;
  std::string message;
};

struct Workspace {
  std::filesystem::path root;
  std::filesystem::path identity_file;  // CLAUDE.md (Layer 0)
  std::filesystem::path routing_file;   // CONTEXT.md (Layer 1)
  std::vector<StageRef> stages;         // sorted by ordinal
  std::vector<std::filesystem::path> config_dirs;  // existing _config/, shared/
  std::filesystem::path state_dir;                 // .icm/ (engine-owned)
  bool stages_under_subdir = false;

  // Accepts an ordinal ("2"), a directory name ("02_script"), or a slug
  // ("script").
  const StageRef* find_stage(const std::string& key) const;

  std::string rel(const std::filesystem::path& p) const;
};

Workspace discover(const std::filesystem::path& root);

// Structural rule sweep. Violations are data, sorted by (path, rule_id);
// an empty list means the workspace satisfies every rule.
std::vector<Violation> validate(const Workspace& ws);

// Total over paths under root; throws PathOutsideWorkspace otherwise.
LayerClass classify(const std::filesystem::path& path, const Workspace& ws);

// Ordinal of the stage whose output/ contains (or is) `path`, if any.
std::optional<int> producing_stage(const Workspace& ws,
                                   const std::filesystem::path& path);

// All visible files under root (hidden and engine-state entries skipped),
// sorted by workspace-relative path.
std::vector<std::filesystem::path> list_files(const Workspace& ws);

}  // namespace icm
