#include <mfl/multivector.hpp>
#include <mfl/version.hpp>

int main() {
  const auto i = mfl::pseudoscalar();
  return (i * i == mfl::Multivector(-1.0)) ? 0 : 1;
}
