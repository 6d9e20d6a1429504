// placeholder main; the real CLI is assembled after the library modules
#include <eqca/abgrp.hpp>
#include <iostream>

int main() {
    std::cout << "eqca (under construction)\n";
    return 0;
}
