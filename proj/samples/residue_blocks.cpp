// Pushforward residue of a lambda-connection with two Jordan blocks.

#include <iostream>

#include "parahiggs/parahiggs.hpp"

int main() {
    using namespace parahiggs;
    ResidueBlockAssembly a;
    a.n = 3;
    a.lambda = Rational(3, 2);
    a.blocks = {{0, RationalMatrix::from_rows({{0, 1}, {0, 0}})}, {2, RationalMatrix::from_rows({{0, 5}, {0, 0}})}};
    a.lower_blocks[{1, 0}] = RationalMatrix::from_rows({{3, -2}, {7, 1}});

    auto r = assemble_pushforward_residue(a);
    std::cout << "residue " << io::to_json(r.matrix).dump() << "\n";
    std::cout << "eigenvalues";
    for (const auto& e : r.eigenvalues) std::cout << " " << to_string(e);
    std::cout << "\n";
}
