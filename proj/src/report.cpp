#include "avgchain/report.hpp"

namespace avgchain {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

}  // namespace avgchain
