// Command-line front end: run a scenario, check the cipher, or validate a
// scenario file.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qmanet/aes.hpp"
#include "qmanet/metrics.hpp"
#include "qmanet/scenario.hpp"
#include "qmanet/simulation.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

struct BlockVector {
  const char* name;
  const char* key;
  const char* plaintext;
  const char* ciphertext;
};

struct MacVector {
  const char* name;
  const char* key;
  const char* message;
  const char* mac;
};

// Published AES-128 and AES-CMAC known answers.
constexpr BlockVector kBlockVectors[] = {
    {"fips197-c1", "000102030405060708090a0b0c0d0e0f", "00112233445566778899aabbccddeeff",
     "69c4e0d86a7b0430d8cdb78070b4c55a"},
    {"fips197-b", "2b7e151628aed2a6abf7158809cf4f3c", "3243f6a8885a308d313198a2e0370734",
     "3925841d02dc09fbdc118597196a0b32"},
    {"zero-key", "00000000000000000000000000000000", "00000000000000000000000000000000",
     "66e94bd4ef8a2c3b884cfa59ca342b2e"},
};

constexpr MacVector kMacVectors[] = {
    {"rfc4493-empty", "2b7e151628aed2a6abf7158809cf4f3c", "", "bb1d6929e95937287fa37d129b756746"},
    {"rfc4493-16", "2b7e151628aed2a6abf7158809cf4f3c", "6bc1bee22e409f96e93d7e117393172a",
     "070a16b46b4d4144f79bdd9dd04a287c"},
    {"rfc4493-40", "2b7e151628aed2a6abf7158809cf4f3c",
     "6bc1bee22e409f96e93d7e117393172aae2d8a571e03ac9c9eb76fac45af8e5130c81c46a35ce411",
     "dfa66747de9ae63030ca32611497c827"},
};

qmanet::Bytes from_hex(const std::string& hex) {
  qmanet::Bytes out;
  for (std::size_t i = 0; i + 1 < hex.size(); i += 2) out.push_back(static_cast<std::uint8_t>(std::stoul(hex.substr(i, 2), nullptr, 16)));
  return out;
}

int selftest() {
  using namespace qmanet::aes;
  int failures = 0;
  auto report = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };

  for (const auto& v : kBlockVectors) {
    const auto ks = expand_key(from_hex(v.key));
    Block pt{}, ct{};
    const auto p = from_hex(v.plaintext), c = from_hex(v.ciphertext);
    std::copy(p.begin(), p.end(), pt.begin());
    std::copy(c.begin(), c.end(), ct.begin());
    RoundCounter enc_rounds, dec_rounds;
    const bool enc_ok = encrypt_block(pt, ks, &enc_rounds) == ct;
    const bool dec_ok = decrypt_block(ct, ks, &dec_rounds) == pt;
    report(std::string(v.name) + " encrypt", enc_ok);
    report(std::string(v.name) + " decrypt", dec_ok);
    report(std::string(v.name) + " rounds", enc_rounds.total() == kRounds && dec_rounds.total() == kRounds);
  }
  for (const auto& v : kMacVectors) {
    const auto ks = expand_key(from_hex(v.key));
    report(std::string(v.name), to_hex(cmac(ks, from_hex(v.message))) == v.mac);
  }
  std::cout << (failures ? "selftest FAILED\n" : "selftest passed\n");
  return failures ? kRuntimeError : kOk;
}

int run(const std::string& scenario_path, std::optional<std::uint64_t> seed, const std::string& out_path,
        const std::string& format) {
  qmanet::ScenarioConfig cfg;
  try {
    cfg = qmanet::load_scenario(scenario_path);
  } catch (const qmanet::ConfigError& e) {
    std::cerr << scenario_path << ": " << e.what() << "\n";
    return kConfigError;
  }
  if (seed) cfg.seed = *seed;

  std::string text;
  try {
    const auto report = qmanet::run_scenario(cfg);
    text = format == "json" ? qmanet::metrics::to_json(report) : qmanet::metrics::to_csv(report);
  } catch (const std::logic_error& e) {
    std::cerr << "runtime assertion failed: " << e.what() << "\n";
    return kRuntimeError;
  }

  if (out_path == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "cannot write " << out_path << "\n";
    return kRuntimeError;
  }
  return kOk;
}

int validate(const std::string& scenario_path) {
  try {
    const auto cfg = qmanet::load_scenario(scenario_path);
    std::cout << scenario_path << ": ok (" << cfg.nodes << " nodes, " << cfg.flows.size() << " flows, "
              << cfg.attacks.size() << " attacks)\n";
    return kOk;
  } catch (const qmanet::ConfigError& e) {
    std::cerr << scenario_path << ": " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmanet: secure OLSR MANET simulator"};
  app.require_subcommand(1);

  std::string scenario, out = "-", format = "csv";
  std::optional<std::uint64_t> seed;

  auto* run_cmd = app.add_subcommand("run", "Run a scenario and write the metrics report");
  run_cmd->add_option("--scenario", scenario, "Scenario file")->required();
  run_cmd->add_option("--seed", seed, "Override the scenario seed");
  run_cmd->add_option("--out", out, "Report path, '-' for stdout");
  run_cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));

  auto* selftest_cmd = app.add_subcommand("selftest", "AES-128 and CMAC known-answer checks");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Parse and check a scenario file");
  validate_cmd->add_option("--scenario", validate_path, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (*run_cmd) return run(scenario, seed, out, format);
  if (*selftest_cmd) return selftest();
  if (*validate_cmd) return validate(validate_path);
  return kConfigError;
}
