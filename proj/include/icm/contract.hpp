#pragma once

#include <optional>
#include <string>
#include <vector>

#include "icm/workspace.hpp"

namespace icm {

// One line of an Inputs table:
//   - Layer <3|4> (<reference|working>): <path>[#<anchor>]
struct InputRef {
  int declared_layer = 3;
  std::string layer_keyword;  // "reference" | "working"
  std::string rel_path;       // as written; always relative
  std::optional<std::string> section_scope;
  std::size_t line = 0;  // 1-based source line

  bool operator==(const InputRef& o) const {
    return declared_layer == o.declared_layer &&
           layer_keyword == o.layer_keyword && rel_path == o.rel_path &&
           section_scope == o.section_scope;
  }
};

// One line of an Outputs table: `- <filename> -> <dir>/`
struct OutputRef {
  std::string filename;
  std::string dest;  // "output/" or a subdirectory of it, with trailing '/'
  std::size_t line = 0;

  bool operator==(const OutputRef& o) const {
    return filename == o.filename && dest == o.dest;
  }
};

struct ProcessSegment {
  int index = 0;
  std::string text;
  bool followed_by_breakpoint = false;

  bool operator==(const ProcessSegment& o) const {
    return index == o.index && text == o.text &&
           followed_by_breakpoint == o.followed_by_breakpoint;
  }
};

enum class VerifyKind { Exists, MaxWords, MarkersResolve, HeadingsCover };

const char* verify_kind_name(VerifyKind k);  // surface syntax: "max-words", ...
std::optional<VerifyKind> verify_kind_from_name(const std::string& name);
std::size_t verify_kind_arity(VerifyKind k);

struct VerifyCheck {
  VerifyKind kind = VerifyKind::Exists;
  std::vector<std::string> args;  // arity: exists 1, max-words 2,
                                  // markers-resolve 1, headings-cover 2
  std::size_t line = 0;

  bool operator==(const VerifyCheck& o) const {
    return kind == o.kind && args == o.args;
  }
};

struct StageContract {
  StageRef stage;
  std::vector<InputRef> inputs;
  std::vector<ProcessSegment> process;
  std::vector<OutputRef> outputs;
  std::vector<VerifyCheck> verify;
  std::string raw_text;
};

// Structural equality over the parsed fields (raw_text excluded).
bool structurally_equal(const StageContract& a, const StageContract& b);

struct ParseError {
  std::string code;  // MissingSection, MalformedInputLine, ...
  std::size_t line = 0;
  std::string message;
};

struct ParseResult {
  std::optional<StageContract> contract;  // engaged iff errors is empty
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

// Total over UTF-8 text: always returns a contract or typed errors.
ParseResult parse_contract(const std::string& text, const StageRef& stage);

// The line that splits Process into breakpointed sub-steps.
inline constexpr const char* kBreakpointMarker = "<!-- icm:break -->";

struct ResolvedInput {
  std::filesystem::path path;  // absolute, lexically normalized
  std::string rel_to_root;     // '/'-separated
  LayerClass cls;
  std::optional<std::string> anchor;
  int decl_index = 0;  // index into contract.inputs
  int declared_layer = 3;
};

// Expands each InputRef against the stage directory. Directory inputs expand
// to contained files: an output/ directory to its immediate files only,
// anything else recursively. Declared layers are cross-checked against
// classify(). Exact duplicate (path, anchor) pairs collapse to the first.
std::vector<ResolvedInput> resolve_inputs(const StageContract& contract,
                                          const Workspace& ws);

// Canonical markdown rendering; parse_contract(normalize(c)) is structurally
// equal to c. An empty Verify section is omitted.
std::string normalize(const StageContract& contract);

}  // namespace icm
