#pragma once

#include <string>

namespace pvc {

enum class Status { Pass, Fail, Skipped };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

inline std::string truncate_text(std::string s, std::size_t n = 400) {
  if (s.size() > n) s = s.substr(0, n) + " ...";
  return s;
}

/// A printed formula that disagrees with the verified one; never counted as a failure.
struct Discrepancy {
  std::string subject;
  std::string field;
  std::string message;
};

}  // namespace pvc
