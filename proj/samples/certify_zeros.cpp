// Certify the integer zeros of an LRS read from a JSON file.
//
//   certify_zeros data/w.json [prime]

#include "lrsz/lrsz.hpp"

#include <iostream>

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: certify_zeros FILE [PRIME]\n";
        return 1;
    }
    try {
        const lrsz::Lrs u = lrsz::load_lrs_file(argv[1]);
        if (argc > 2) {
            std::cout << lrsz::render(lrsz::find_zeros(u, std::stoul(argv[2])));
            return 0;
        }
        const lrsz::PrimeSearch s = lrsz::search_certifying_primes(u, {}, 100, 1);
        if (s.certificates.empty()) {
            std::cout << "no prime below 100 closes every class\n";
            return 2;
        }
        std::cout << lrsz::render(s.certificates.front());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
