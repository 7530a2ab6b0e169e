#ifndef HA2KIT_REPORT_HPP
#define HA2KIT_REPORT_HPP

#include <chrono>
#include <string>
#include <vector>

namespace ha2kit {

// One symbolic residual check: which equation, at which indices, and the
// printed residual. `pass` means the residual is exactly zero.
struct ResidualCheck {
    std::string equation_id;
    std::string indices;
    std::string residual;
    bool pass = false;
};

struct VerificationReport {
    std::string title;
    std::vector<ResidualCheck> checks;
    double elapsed_ms = 0.0;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    size_t failure_count() const {
        size_t n = 0;
        for (const auto& c : checks)
            if (!c.pass) ++n;
        return n;
    }

    void add(std::string equation_id, std::string indices, std::string residual, bool ok) {
        checks.push_back({std::move(equation_id), std::move(indices), std::move(residual), ok});
    }

    void merge(const VerificationReport& o) {
        checks.insert(checks.end(), o.checks.begin(), o.checks.end());
        elapsed_ms += o.elapsed_ms;
    }
};

class ReportTimer {
  public:
    explicit ReportTimer(VerificationReport& r) : report_(r), t0_(std::chrono::steady_clock::now()) {}
    ~ReportTimer() {
        auto t1 = std::chrono::steady_clock::now();
        report_.elapsed_ms += std::chrono::duration<double, std::milli>(t1 - t0_).count();
    }

  private:
    VerificationReport& report_;
    std::chrono::steady_clock::time_point t0_;
};

}  // namespace ha2kit

#endif
