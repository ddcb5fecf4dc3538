/* Copyright 2026 The groundkit authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "groundkit/util.hpp"

namespace groundkit {

class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A clinical definition as retrieved from a label glossary. Definitions are
// stored without a trailing period; the query template supplies it.
struct AbnormalityDef {
  std::string name;
  std::string definition;
  std::string source;  // citation text, optional

  friend bool operator==(const AbnormalityDef&, const AbnormalityDef&) = default;
};

// Ordered registry with case-insensitively unique, nonempty names.
class DefinitionRegistry {
 public:
  static DefinitionRegistry from_defs(std::vector<AbnormalityDef> defs);
  // JSON file: {"definitions": [{"name", "definition", "source"?}, ...]}
  static DefinitionRegistry load(const std::string& path);

  const std::vector<AbnormalityDef>& defs() const { return defs_; }
  const AbnormalityDef* find(std::string_view name) const;
  bool empty() const { return defs_.empty(); }

 private:
  std::vector<AbnormalityDef> defs_;
};

// Ordered visual-attribute list; nonempty, no duplicates. The default set is
// shape, location, density, color — "color" kept over "pixel intensity" for
// compatibility with generalist models.
struct AttributeSet {
  std::vector<std::string> attributes;

  static AttributeSet defaults();
  static AttributeSet from_list(std::vector<std::string> attrs);
  std::string joined() const;  // ", " separated
};

struct Provenance {
  std::string backend;
  std::string timestamp;  // ISO 8601, empty when unknown
};

struct KnowledgeDescription {
  std::string name;
  std::string description;
  Provenance provenance;
};

// One text-in/text-out call to a language model.
class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  virtual std::string id() const = 0;
  // Throws BackendError on failure.
  virtual std::string query(const std::string& prompt) = 0;
};

// Deterministic offline backend over a name -> description table. The table
// is keyed by lowercased abnormality name; the query is matched by the name
// embedded in the standard query template. Unknown names fail the query.
class StubBackend : public LlmBackend {
 public:
  explicit StubBackend(std::map<std::string, std::string> table,
                       std::string id = "stub-table-v1");

  std::string id() const override { return id_; }
  std::string query(const std::string& prompt) override;

 private:
  std::map<std::string, std::string> table_;
  std::string id_;
};

// Minimal chat-completion client. POSTs {"model", "messages"} to
// <endpoint>/v1/chat/completions with a bearer token read from the named
// environment variable (requests are sent without auth when it is unset).
class HttpBackend : public LlmBackend {
 public:
  HttpBackend(std::string endpoint, std::string model,
              std::string api_key_env = "GROUNDKIT_LLM_API_KEY");

  std::string id() const override;
  std::string query(const std::string& prompt) override;

 private:
  std::string endpoint_;
  std::string model_;
  std::string api_key_env_;
};

// The exact query sent to the language model:
//   Here is the medical definition of {name}: "{definition}." Based on this
//   definition and focusing on the following visual attributes (e.g.,
//   {attributes}), provide a brief description of the abnormality.
// Throws ValidationError when the definition is empty, naming the entry.
std::string build_llm_query(const AbnormalityDef& def,
                            const AttributeSet& attrs);

struct GenerationOptions {
  std::string cache_dir;  // empty disables the on-disk response cache
  int max_attempts = 3;
  int initial_backoff_ms = 100;  // doubles per retry
  unsigned workers = 1;
};

struct GenerationResult {
  std::vector<KnowledgeDescription> descriptions;  // registry order
  std::vector<std::string> missing;  // names that failed after retries
  size_t backend_calls = 0;
};

// One description per definition. Responses are cached on disk keyed by
// (backend id, query hash) so reruns make zero backend calls; failures are
// retried with bounded exponential backoff and then recorded as missing
// rather than dropped.
GenerationResult generate_descriptions(const DefinitionRegistry& registry,
                                       const AttributeSet& attrs,
                                       LlmBackend& backend,
                                       const GenerationOptions& opts = {});

enum class PromptMode { LabelOnly, Knowledge };

PromptMode prompt_mode_from_string(std::string_view s);
const char* to_string(PromptMode mode);

// label_only: "Locate {name}."  knowledge: "Locate {name}: {description}"
// Knowledge mode without a description is an error.
std::string build_grounding_prompt(
    const std::string& name, const std::optional<KnowledgeDescription>& desc,
    PromptMode mode);

// Descriptions file: {"descriptions": [{"name", "description",
// "provenance": {"backend"}}, ...]}. Timestamps live in a ".stamp" sidecar
// so the file itself is byte-stable across reruns.
using DescriptionTable = std::map<std::string, KnowledgeDescription>;

DescriptionTable load_descriptions(const std::string& path);
void write_descriptions(const std::string& path,
                        const std::vector<KnowledgeDescription>& descs);

}  // namespace groundkit
