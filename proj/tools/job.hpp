#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace udfkit {

using json = nlohmann::ordered_json;

inline constexpr const char* tool_version = "1.0.0";
inline constexpr const char* job_schema = "udfkit.job/1";
inline constexpr const char* report_schema = "udfkit.report/1";

/// A malformed job: `location` is a JSON pointer into the job document.
class JobError : public std::runtime_error {
public:
    JobError(std::string location, const std::string& message)
        : std::runtime_error(message), location_(std::move(location))
    {
    }
    const std::string& location() const { return location_; }

private:
    std::string location_;
};

struct Parameters {
    unsigned order = 6;
    int degree = 4;
    int cobar_cutoff = 6;
    std::uint64_t seed = 0;
    int search_bound = 2;
};

/// Values given on the command line win over the job's "parameters" block.
struct Overrides {
    std::optional<std::string> command;
    std::optional<unsigned> order;
    std::optional<int> degree;
    std::optional<int> cobar_cutoff;
    std::optional<std::uint64_t> seed;
};

const std::vector<std::string>& commands();

/// Runs a job (or a {"jobs": [...]} batch) and returns the report document.
/// Never throws: malformed input and library errors become status "error".
json run(const json& job, const Overrides& overrides = {});

/// 0 pass, 1 fail, 2 error.
int exit_code(const json& report);

std::string render_text(const json& report);
std::string render_json(const json& report);

const std::vector<std::string>& example_names();
/// Throws JobError for an unknown name.
json example(const std::string& name);

} // namespace udfkit
