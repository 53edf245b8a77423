#include <iostream>

int main() {
  std::cout << "uts: command surface lands with the cli module\n";
  return 0;
}
