#pragma once

#include <iosfwd>

#include "subint/json_io.hpp"

namespace subint {

struct RunOptions {
  int jobs = 1;
  bool json_format = true;
  bool timing = false;
  Limits limits;
  // Comma-separated rational lists; when both are set they replace the
  // schedules of every br_run query in the document.
  std::string eps_schedule;
  std::string lambda_schedule;
};

struct RunOutcome {
  int exit_code = 0;  // 0 all pass, 1 any fail/error, 2 schema trouble
  Json reports = Json::array();
};

// Executes the document's queries in order (optionally on a worker pool;
// report order always follows input order) and renders to the stream.
RunOutcome run_document(const Json& doc, const RunOptions& opts,
                        std::ostream& out);

// Verifies a {"instance", "x", "xstar", "eps", "certificate"} document.
RunOutcome run_verify(const Json& doc, const RunOptions& opts,
                      std::ostream& out);

void render_text(const Json& reports, std::ostream& out);

}  // namespace subint
