#include "phull/corpus.hpp"

#include <iostream>

int main() {
    const auto rows = phull::corpus::run_all(phull::corpus::Options{});
    int failed = 0;
    for (const auto& r : rows) {
        std::cout << phull::corpus::line(r) << '\n';
        failed += r.passed ? 0 : 1;
    }
    std::cout << (rows.size() - static_cast<std::size_t>(failed)) << '/' << rows.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
