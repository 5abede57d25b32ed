#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rsched/model.hpp"

namespace rsched::io {

// Instance: {"jobs":[{"id":1,"r":0.0,"p":1.0,"w":1.0}, ...]}; ids optional,
// assigned 1..n in file order when every id is absent.
// Trace:    {"events":[{"t":0.0,"kind":"start","job":1}, ...],"wc_max":1.0}
// Doubles are written in shortest round-trip form, so parse(serialize(x)) == x.

Instance parse_instance(std::string_view json_text);
std::string serialize_instance(const Instance& instance);

Trace parse_trace(std::string_view json_text);
std::string serialize_trace(const Trace& trace);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& instance);
Trace read_trace(const std::filesystem::path& path);
void write_trace(const std::filesystem::path& path, const Trace& trace);

} // namespace rsched::io
