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
#include "groundkit/knowledge_prompts.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <set>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace groundkit {

using nlohmann::json;

DefinitionRegistry DefinitionRegistry::from_defs(
    std::vector<AbnormalityDef> defs) {
  std::set<std::string> seen;
  for (const AbnormalityDef& d : defs) {
    if (trim(d.name).empty())
      throw ValidationError("registry entry with empty name");
    std::string key = to_lower(d.name);
    if (!seen.insert(key).second)
      throw ValidationError("duplicate abnormality name (case-insensitive): '" +
                            d.name + "'");
  }
  DefinitionRegistry r;
  r.defs_ = std::move(defs);
  return r;
}

DefinitionRegistry DefinitionRegistry::load(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ValidationError("definitions file " + path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("definitions") ||
      !doc["definitions"].is_array())
    throw ValidationError("definitions file " + path +
                          ": expected {\"definitions\": [...]}");
  std::vector<AbnormalityDef> defs;
  for (const json& entry : doc["definitions"]) {
    AbnormalityDef d;
    d.name = entry.value("name", "");
    d.definition = entry.value("definition", "");
    d.source = entry.value("source", "");
    defs.push_back(std::move(d));
  }
  return from_defs(std::move(defs));
}

const AbnormalityDef* DefinitionRegistry::find(std::string_view name) const {
  const std::string key = to_lower(name);
  for (const AbnormalityDef& d : defs_)
    if (to_lower(d.name) == key) return &d;
  return nullptr;
}

AttributeSet AttributeSet::defaults() {
  return AttributeSet{{"shape", "location", "density", "color"}};
}

AttributeSet AttributeSet::from_list(std::vector<std::string> attrs) {
  if (attrs.empty()) throw ValidationError("attribute set must be nonempty");
  std::set<std::string> seen;
  for (const std::string& a : attrs)
    if (!seen.insert(a).second)
      throw ValidationError("duplicate attribute: '" + a + "'");
  return AttributeSet{std::move(attrs)};
}

std::string AttributeSet::joined() const {
  std::string out;
  for (size_t i = 0; i < attributes.size(); ++i) {
    if (i) out += ", ";
    out += attributes[i];
  }
  return out;
}

StubBackend::StubBackend(std::map<std::string, std::string> table,
                         std::string id)
    : id_(std::move(id)) {
  for (auto& [name, desc] : table) table_[to_lower(name)] = desc;
}

std::string StubBackend::query(const std::string& prompt) {
  // The standard query names its abnormality between the fixed lead-in and
  // the colon before the quoted definition.
  constexpr std::string_view kLead = "Here is the medical definition of ";
  size_t start = prompt.find(kLead);
  size_t colon = prompt.find(": \"", start == std::string::npos ? 0 : start);
  if (start == std::string::npos || colon == std::string::npos)
    throw BackendError("stub backend: query does not follow the standard template");
  start += kLead.size();
  const std::string name = to_lower(prompt.substr(start, colon - start));
  auto it = table_.find(name);
  if (it == table_.end())
    throw BackendError("stub backend: no table entry for '" + name + "'");
  return it->second;
}

HttpBackend::HttpBackend(std::string endpoint, std::string model,
                         std::string api_key_env)
    : endpoint_(std::move(endpoint)),
      model_(std::move(model)),
      api_key_env_(std::move(api_key_env)) {}

std::string HttpBackend::id() const { return "http:" + model_ + "@" + endpoint_; }

std::string HttpBackend::query(const std::string& prompt) {
  httplib::Client client(endpoint_);
  client.set_connection_timeout(10);
  client.set_read_timeout(60);
  httplib::Headers headers;
  if (const char* key = std::getenv(api_key_env_.c_str()))
    headers.emplace("Authorization", std::string("Bearer ") + key);
  json body = {
      {"model", model_},
      {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
  };
  auto res = client.Post("/v1/chat/completions", headers, body.dump(),
                         "application/json");
  if (!res)
    throw BackendError("http backend: request to " + endpoint_ + " failed: " +
                       httplib::to_string(res.error()));
  if (res->status != 200)
    throw BackendError("http backend: status " + std::to_string(res->status) +
                       " from " + endpoint_);
  try {
    json reply = json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content")
        .get<std::string>();
  } catch (const json::exception& e) {
    throw BackendError(std::string("http backend: malformed response: ") +
                       e.what());
  }
}

std::string build_llm_query(const AbnormalityDef& def,
                            const AttributeSet& attrs) {
  if (trim(def.definition).empty())
    throw ValidationError("abnormality '" + def.name + "' has no definition");
  if (attrs.attributes.empty())
    throw ValidationError("attribute set must be nonempty");
  return "Here is the medical definition of " + def.name + ": \"" +
         def.definition + ".\" Based on this definition and focusing on the " +
         "following visual attributes (e.g., " + attrs.joined() +
         "), provide a brief description of the abnormality.";
}

namespace {

std::string cache_file(const std::string& dir, const std::string& backend_id,
                       const std::string& query) {
  const std::string key = fnv1a64_hex(backend_id + "\n" + query);
  return (std::filesystem::path(dir) / (key + ".txt")).string();
}

// Last-writer-wins; the rename keeps concurrent writers from interleaving.
void cache_store(const std::string& path, const std::string& value) {
  const std::string tmp = path + ".tmp" + std::to_string(
      std::hash<std::thread::id>{}(std::this_thread::get_id()));
  write_text_file(tmp, value);
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace

GenerationResult generate_descriptions(const DefinitionRegistry& registry,
                                       const AttributeSet& attrs,
                                       LlmBackend& backend,
                                       const GenerationOptions& opts) {
  GenerationResult result;
  const size_t n = registry.defs().size();
  if (n == 0) return result;
  if (!opts.cache_dir.empty())
    std::filesystem::create_directories(opts.cache_dir);

  struct Slot {
    std::optional<KnowledgeDescription> desc;
    std::string error;
  };
  std::vector<Slot> slots(n);
  std::mutex stats_mutex;
  size_t calls = 0;

  parallel_for(n, opts.workers, [&](size_t i) {
    const AbnormalityDef& def = registry.defs()[i];
    std::string query;
    try {
      query = build_llm_query(def, attrs);
    } catch (const ValidationError& e) {
      slots[i].error = e.what();
      return;
    }
    std::string path;
    if (!opts.cache_dir.empty()) {
      path = cache_file(opts.cache_dir, backend.id(), query);
      if (std::filesystem::exists(path)) {
        slots[i].desc = KnowledgeDescription{
            def.name, read_text_file(path), {backend.id(), ""}};
        return;
      }
    }
    std::string response;
    bool ok = false;
    std::string last_error;
    int backoff = opts.initial_backoff_ms;
    for (int attempt = 0; attempt < std::max(1, opts.max_attempts); ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
        backoff *= 2;
      }
      try {
        {
          std::lock_guard<std::mutex> lock(stats_mutex);
          ++calls;
        }
        response = backend.query(query);
        ok = true;
        break;
      } catch (const BackendError& e) {
        last_error = e.what();
      }
    }
    if (!ok) {
      slots[i].error = last_error;
      return;
    }
    if (!path.empty()) cache_store(path, response);
    slots[i].desc =
        KnowledgeDescription{def.name, response, {backend.id(), now_iso8601()}};
  });

  result.backend_calls = calls;
  for (size_t i = 0; i < n; ++i) {
    if (slots[i].desc) {
      result.descriptions.push_back(std::move(*slots[i].desc));
    } else {
      result.missing.push_back(registry.defs()[i].name + ": " +
                               slots[i].error);
    }
  }
  return result;
}

PromptMode prompt_mode_from_string(std::string_view s) {
  if (s == "label_only") return PromptMode::LabelOnly;
  if (s == "knowledge") return PromptMode::Knowledge;
  throw ConfigError("unknown prompt mode: '" + std::string(s) +
                    "' (expected label_only or knowledge)");
}

const char* to_string(PromptMode mode) {
  return mode == PromptMode::LabelOnly ? "label_only" : "knowledge";
}

std::string build_grounding_prompt(
    const std::string& name, const std::optional<KnowledgeDescription>& desc,
    PromptMode mode) {
  if (mode == PromptMode::LabelOnly) return "Locate " + name + ".";
  if (!desc)
    throw ValidationError("knowledge prompt for '" + name +
                          "' requires a description");
  return "Locate " + name + ": " + desc->description;
}

DescriptionTable load_descriptions(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ValidationError("descriptions file " + path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("descriptions") ||
      !doc["descriptions"].is_array())
    throw ValidationError("descriptions file " + path +
                          ": expected {\"descriptions\": [...]}");
  DescriptionTable table;
  for (const json& entry : doc["descriptions"]) {
    KnowledgeDescription d;
    d.name = entry.value("name", "");
    d.description = entry.value("description", "");
    if (entry.contains("provenance"))
      d.provenance.backend = entry["provenance"].value("backend", "");
    if (trim(d.name).empty() || trim(d.description).empty())
      throw ValidationError("descriptions file " + path +
                            ": entry with empty name or description");
    table[to_lower(d.name)] = std::move(d);
  }
  return table;
}

void write_descriptions(const std::string& path,
                        const std::vector<KnowledgeDescription>& descs) {
  json entries = json::array();
  for (const KnowledgeDescription& d : descs) {
    entries.push_back({
        {"name", d.name},
        {"description", d.description},
        {"provenance", {{"backend", d.provenance.backend}}},
    });
  }
  json doc = {{"version", 1}, {"descriptions", entries}};
  write_text_file(path, doc.dump(2) + "\n");
  write_text_file(path + ".stamp", now_iso8601() + "\n");
}

}  // namespace groundkit
