#include "rsched/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rsched/errors.hpp"

namespace rsched::io {
namespace {

using nlohmann::json;

double number_field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number())
    throw ParseError(std::string("missing or non-numeric field '") + key + "'");
  return it->get<double>();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out)
    throw ParseError("cannot write " + path.string());
  out << text << '\n';
}

} // namespace

Instance parse_instance(std::string_view json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object() || !doc.contains("jobs") || !doc["jobs"].is_array())
    throw ParseError("instance must be an object with a 'jobs' array");

  const json& arr = doc["jobs"];
  std::size_t with_id = 0;
  for (const json& j : arr) {
    if (!j.is_object())
      throw ParseError("each job must be an object");
    if (j.contains("id"))
      ++with_id;
  }
  if (with_id != 0 && with_id != arr.size())
    throw ParseError("either all jobs carry an 'id' or none do");

  std::vector<Job> jobs;
  jobs.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& j = arr[i];
    Job job;
    if (with_id != 0) {
      if (!j["id"].is_number_integer())
        throw ParseError("job id must be an integer");
      job.id = j["id"].get<JobId>();
    } else {
      job.id = static_cast<JobId>(i + 1);
    }
    job.release = number_field(j, "r");
    job.proc = number_field(j, "p");
    job.weight = number_field(j, "w");
    jobs.push_back(job);
  }
  try {
    return Instance(std::move(jobs));
  } catch (const InvalidInstance& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_instance(const Instance& instance) {
  json arr = json::array();
  for (const Job& j : instance.jobs())
    arr.push_back({{"id", j.id}, {"r", j.release}, {"p", j.proc}, {"w", j.weight}});
  return json{{"jobs", arr}}.dump(2);
}

Trace parse_trace(std::string_view json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object() || !doc.contains("events") || !doc["events"].is_array())
    throw ParseError("trace must be an object with an 'events' array");
  Trace trace;
  for (const json& e : doc["events"]) {
    if (!e.is_object() || !e.contains("kind") || !e["kind"].is_string() ||
        !e.contains("job") || !e["job"].is_number_integer())
      throw ParseError("trace event needs 't', 'kind' and integer 'job'");
    trace.events.push_back({number_field(e, "t"),
                            parse_event_kind(e["kind"].get<std::string>()),
                            e["job"].get<JobId>()});
  }
  if (doc.contains("wc_max"))
    trace.wc_max = number_field(doc, "wc_max");
  return trace;
}

std::string serialize_trace(const Trace& trace) {
  json arr = json::array();
  for (const TraceEvent& e : trace.events)
    arr.push_back({{"t", e.time}, {"kind", to_string(e.kind)}, {"job", e.job}});
  return json{{"events", arr}, {"wc_max", trace.wc_max}}.dump(2);
}

Instance read_instance(const std::filesystem::path& path) {
  return parse_instance(slurp(path));
}

void write_instance(const std::filesystem::path& path, const Instance& instance) {
  spill(path, serialize_instance(instance));
}

Trace read_trace(const std::filesystem::path& path) {
  return parse_trace(slurp(path));
}

void write_trace(const std::filesystem::path& path, const Trace& trace) {
  spill(path, serialize_trace(trace));
}

} // namespace rsched::io
