#include <iostream>

#include "kaleido/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    kaleido::RunResult rr = kaleido::run(args);
    if (rr.format == "json")
        std::cout << rr.report.to_json().dump(2) << '\n';
    else
        std::cout << rr.report.text();
    if (!rr.out_file.empty()) {
        try {
            kaleido::write_json_file(rr.out_file, rr.report.to_json());
        } catch (const std::exception& e) {
            std::cerr << "cannot write report: " << e.what() << '\n';
            return 2;
        }
    }
    return rr.exit_code;
}
