#include <iostream>
#include <string>
#include <vector>

#include "apharm/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    const apharm::CommandResult result = apharm::run(args);
    for (const auto& line : result.diagnostics) std::cerr << line << '\n';
    if (result.status == apharm::CommandResult::Status::ok && !result.payload.is_null())
        std::cout << result.payload.dump() << '\n';
    return result.exit_code;
}
