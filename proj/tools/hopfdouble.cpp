// placeholder main; the CLI is assembled after the kernel modules.
#include <iostream>

#include "hopf/cyclotomic.hpp"

int main() {
    std::cout << hopf::Cyc::root_of_unity(3, 1) << "\n";
    return 0;
}
