// Characters at a branch point of a degree-5 cyclic cover, their weights
// downstairs, and one Frobenius step seen from both sides.

#include <iostream>

#include "parahiggs/parahiggs.hpp"

int main() {
    using namespace parahiggs;
    CharacterSystem cs(5);
    cs.add("P", 1, 2);
    cs.add("P", 3, 1);

    const std::int64_t p = 7;
    WeightSystem down = chars_to_weights(cs);
    std::cout << "characters " << io::format_characters(cs) << "\n";
    std::cout << "weights    " << io::format_weights(down) << "\n";
    std::cout << "frobenius upstairs, then push: " << io::format_weights(chars_to_weights(frobenius_on_chars(cs, p)))
              << "\n";
    std::cout << "push, then inverse cartier:    " << io::format_weights(inverse_cartier_weights(down, p)) << "\n";

    auto orbit = weight_orbit(down, p, 100);
    std::cout << "weight period at p = " << p << ": " << *orbit.period << "\n";
}
