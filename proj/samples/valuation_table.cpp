// Print the p-adic valuation profile of the Tribonacci numbers and compare it
// with direct evaluation.
//
//   valuation_table [p] [bound]

#include "lrsz/lrsz.hpp"

#include <iostream>

int main(int argc, char** argv) {
    const unsigned long p = argc > 1 ? std::stoul(argv[1]) : 2;
    const std::int64_t bound = argc > 2 ? std::stoll(argv[2]) : 10'000;
    try {
        const lrsz::Lrs T = lrsz::tribonacci();
        const lrsz::ValuationProfile prof = lrsz::valuation_profile(T, p);
        std::cout << lrsz::render(prof) << lrsz::render(prof.check(T, bound));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
