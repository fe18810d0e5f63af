#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "serialize.hpp"

namespace bt3::io {

/// Exit codes of the harness.
enum Status { kOk = 0, kConfigError = 2, kHorizonFailure = 3 };

struct RunOutput {
  int status = kOk;
  std::vector<json> records;                   // one object per record, each with config_hash and seed
  std::map<std::string, std::string> tables;  // table name -> CSV text
  json error;                                  // set when status == kConfigError
};

const std::vector<std::string>& subcommands();

/// Runs one experiment family. Configuration problems come back as status 2 with a
/// machine-readable error document rather than as exceptions.
RunOutput run_subcommand(const std::string& name, const json& config, std::uint64_t seed, unsigned threads = 1);

}  // namespace bt3::io
