#pragma once

#include <stdexcept>
#include <string>

namespace disinfo {

// Base for every failure the pipeline raises; the CLI catches this and maps
// it to a nonzero exit with the message on stderr.
struct PipelineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingField : PipelineError {
  explicit MissingField(const std::string& name)
      : PipelineError("missing required field: " + name), field(name) {}
  std::string field;
};

struct BadTimestamp : PipelineError {
  explicit BadTimestamp(const std::string& value)
      : PipelineError("bad timestamp: " + value) {}
};

struct NotAUrl : PipelineError {
  explicit NotAUrl(const std::string& raw) : PipelineError("not a URL: " + raw) {}
};

struct BadWindow : PipelineError {
  explicit BadWindow(const std::string& why) : PipelineError("bad window: " + why) {}
};

struct EmptyText : PipelineError {
  EmptyText() : PipelineError("empty shingle set") {}
};

struct DegenerateLabels : PipelineError {
  DegenerateLabels() : PipelineError("calibration needs both classes present") {}
};

struct BadConfig : PipelineError {
  explicit BadConfig(const std::string& why) : PipelineError("bad config: " + why) {}
};

struct ConfigError : PipelineError {
  explicit ConfigError(const std::string& why) : PipelineError("config error: " + why) {}
};

struct IoError : PipelineError {
  explicit IoError(const std::string& why) : PipelineError("io error: " + why) {}
};

struct StageError : PipelineError {
  StageError(const std::string& stage_name, const std::string& why)
      : PipelineError("stage " + stage_name + ": " + why), stage(stage_name) {}
  std::string stage;
};

}  // namespace disinfo
