#include "support/fixtures.hpp"

namespace lshpriv::testing {

std::vector<std::string> example_target_history() {
  return {
      "American President, The (1995)",
      "Birdcage, The (1996)",
      "Client, The (1994)",
      "Crimson Tide (1995)",
      "Dances with Wolves (1990)",
      "Dead Man Walking (1995)",
      "Die Hard: With a Vengeance (1995)",
      "Disclosure (1994)",
      "English Patient, The (1996)",
      "Fargo (1996)",
      "Firm, The (1993)",
      "Forget Paris (1995)",
      "Grumpier Old Men (1995)",
      "Lion King, The (1994)",
      "Mirror Has Two Faces, The (1996)",
      "Mission: Impossible (1996)",
      "Mrs. Doubtfire (1993)",
      "Mr. Holland's Opus (1995)",
      "Nell (1994)",
      "Outbreak (1995)",
      "Philadelphia (1993)",
      "Postman, The (Postino, Il) (1994)",
      "Rock, The (1996)",
      "Sabrina (1995)",
      "Seven (a.k.a. Se7en) (1995)",
      "Shawshank Redemption, The (1994)",
      "Silence of the Lambs, The (1991)",
      "Spy Hard (1996)",
      "Sudden Death (1995)",
      "Toy Story (1995)",
      "Twelve Monkeys (1995)",
      "Twister (1996)",
  };
}

std::vector<std::string> example_generated_history() {
  return {
      "Ace Ventura: Pet Detective (1994)",
      "Aladdin (1992)",
      "Batman (1989)",
      "Beauty and the Beast (1991)",
      "Braveheart (1995)",
      "Clear and Present Danger (1994)",
      "Cliffhanger (1993)",
      "Crimson Tide (1995)",
      "Die Hard: With a Vengeance (1995)",
      "Disclosure (1994)",
      "Firm, The (1993)",
      "GoldenEye (1995)",
      "Jurassic Park (1993)",
      "Lion King, The (1994)",
      "Outbreak (1995)",
      "Pulp Fiction (1994)",
      "Seven (a.k.a. Se7en) (1995)",
      "Shawshank Redemption, The (1994)",
      "Silence of the Lambs, The (1991)",
      "Star Trek: Generations (1994)",
      "True Lies (1994)",
      "Twelve Monkeys (1995)",
      "Twister (1996)",
      "While You Were Sleeping (1995)",
  };
}

}  // namespace lshpriv::testing
