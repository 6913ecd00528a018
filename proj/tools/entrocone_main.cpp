#include <iostream>

int main() {
    std::cout << "entrocone 0.1.0\n";
    return 0;
}
