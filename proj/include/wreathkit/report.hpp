#pragma once

#include <string>

#include "json.hpp"
#include "wreathkit/embedder.hpp"
#include "wreathkit/metrics.hpp"
#include "wreathkit/mother.hpp"
#include "wreathkit/relations.hpp"
#include "wreathkit/sidki.hpp"

// JSON views of library results. Every report has the same envelope:
// {command, params, results[], failures[], toolkit_version}. Key order is
// fixed, so identical inputs give byte-identical files.

namespace wreathkit::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolkitVersion = "0.1.0";

json envelope(const std::string& command, json params, json results, json failures);

/// {alphabet, automaton} with the automaton in file syntax, initial state s0.
json element_json(const Element& g);

json to_json(const Classification& c);
json to_json(const AuditEntry& e);
json to_json(const AuditReport& r);  // summary and tallies; failures go in the envelope
json to_json(const GrowthTable& t);
json to_json(const LengthResult& r);
json to_json(const CosetReport& r);
json to_json(const Eq7Solution& s);
json to_json(const Certificate& c);
json to_json(const EmbedReport& r);

/// Writes to PATH.tmp and renames over PATH.
void write_file_atomically(const std::string& path, const std::string& text);

}  // namespace wreathkit::report
