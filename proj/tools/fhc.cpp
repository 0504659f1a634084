#include <iostream>

#include "fhc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto r = fhc::cli::run(args);
    for (const auto& d : r.diagnostics) std::cerr << d << "\n";
    bool to_file = r.status != fhc::cli::Status::invalid &&
                   std::find(args.begin(), args.end(), "--out") != args.end();
    if (!to_file) {
        if (r.text)
            std::cout << *r.text;
        else if (!r.payload.is_null())
            std::cout << r.payload.dump(1) << "\n";
    }
    return r.exit_code();
}
