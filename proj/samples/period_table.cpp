// Bound against minimal period for one N over the first few primes.
//
//   period_table 9

#include <cstdio>
#include <cstdlib>

#include "parahiggs/parahiggs.hpp"

int main(int argc, char** argv) {
    using namespace parahiggs;
    const std::int64_t n = argc > 1 ? std::atoll(argv[1]) : 9;
    if (n < 2) {
        std::fprintf(stderr, "N must be >= 2\n");
        return 1;
    }
    std::printf("N = %lld, phi(N (N-2)!) = %s\n", static_cast<long long>(n), global_period_bound(n).str().c_str());
    std::printf("%6s %8s %8s\n", "p", "bound", "minimal");
    for (std::int64_t p : primes_up_to(60)) {
        if (n % p == 0) continue;
        std::printf("%6lld %8s %8lld\n", static_cast<long long>(p), katz_period_bound(n, p).str().c_str(),
                    static_cast<long long>(minimal_geometric_period(n, p, 1)));
    }
}
