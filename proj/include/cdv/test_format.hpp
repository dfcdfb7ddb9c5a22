#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cdv/world.hpp"

namespace cdv {

class FormatError : public std::runtime_error {
 public:
  FormatError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class Verb : std::uint8_t { sendsignal, setparam, receivesignal };
std::string_view verb_name(Verb v);

inline constexpr std::string_view kParamNames[] = {"time", "honTask", "hgazeOk", "hpressureOk", "hlocationOk"};
bool is_param_name(std::string_view name);

/// One high-level test action. `sample` carries a concrete instantiation of a
/// human-side parameter (gaze triple or hand radius) when one was drawn.
struct Action {
  Verb verb = Verb::sendsignal;
  std::string name;
  std::optional<ParamValue> value;
  std::vector<double> sample;

  friend bool operator==(const Action&, const Action&) = default;
};

/// The unit of stimulus: ordered actions plus the seed used for anything the
/// actions leave unsampled.
struct Test {
  std::string id;
  std::uint64_t seed = 0;
  std::vector<Action> actions;
};

/// Line-oriented `<verb> <name>[ = <value>]` with an optional `# seed N`
/// header. Blank lines and other `#` comments are ignored.
Test parse_test(std::string_view text);
std::string serialize_test(const Test& test);
std::string serialize_action(const Action& action);

/// Abstract action with a possibly symbolic value (TRUE, FALSE, ANY).
struct TemplateAction {
  Verb verb = Verb::sendsignal;
  std::string name;
  std::string value;  // empty for signal actions
  friend bool operator==(const TemplateAction&, const TemplateAction&) = default;
};

struct TestTemplate {
  std::vector<TemplateAction> actions;
};

TestTemplate parse_template(std::string_view text);
std::string serialize_template(const TestTemplate& tmpl);

Test load_test_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace cdv
