#pragma once

// Command-line front end: `run`, `check` and `validate`, plus the manual
// step-through session.

#include <iosfwd>
#include <string>
#include <vector>

#include "apia/control_loop.hpp"

namespace apia {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInconsistent = 2, kExitDiagnosis = 3 };

// `args` excludes the program name.
int apia_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

class ManualSession {
 public:
  ManualSession(Agent& agent, std::vector<std::string> validity, std::ostream& out)
      : agent_(agent), validity_(std::move(validity)), out_(out) {}

  // Handles one command line; false once the session should end.
  // Throws DiagnosisFailure.
  bool handle(const std::string& line);
  void help() const;
  void validity() const;

 private:
  void step(int count);
  void state();
  void diff();
  void verdicts();
  void plan();

  Agent& agent_;
  std::vector<std::string> validity_;
  std::ostream& out_;
};

}  // namespace apia
