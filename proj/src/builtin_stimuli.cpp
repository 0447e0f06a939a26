#include "mleat/builtin_stimuli.hpp"

namespace mleat {

namespace {

using List = std::vector<std::string>;

// Canonical stimulus lists. Order matters: it is part of the published sets.

const List kPleasant25 = {
    "caress", "freedom", "health",  "love",    "peace",   "cheer",  "friend",
    "heaven", "loyal",   "pleasure", "diamond", "gentle",  "honest", "lucky",
    "rainbow", "diploma", "gift",    "honor",   "miracle", "sunrise", "family",
    "happy",  "laughter", "paradise", "vacation"};

const List kUnpleasant25 = {
    "abuse",   "crash",    "filth",  "murder",  "sickness", "accident", "death",
    "grief",   "poison",   "stink",  "assault", "disaster", "hatred",   "pollute",
    "tragedy", "divorce",  "jail",   "poverty", "ugly",     "cancer",   "kill",
    "rotten",  "vomit",    "agony",  "prison"};

// Same set with the last two entries swapped for the name-based queries.
const List kUnpleasant25Names = {
    "abuse",   "crash",   "filth",  "murder",  "sickness", "accident", "death",
    "grief",   "poison",  "stink",  "assault", "disaster", "hatred",   "pollute",
    "tragedy", "divorce", "jail",   "poverty", "ugly",     "cancer",   "kill",
    "rotten",  "vomit",   "bomb",   "evil"};

const List kFlowers = {
    "aster",     "clover",   "hyacinth", "marigold", "poppy",    "azalea",  "crocus",
    "iris",      "orchid",   "rose",     "bluebell", "daffodil", "lilac",   "pansy",
    "tulip",     "buttercup", "daisy",    "lily",     "peony",    "violet",  "carnation",
    "gladiola",  "magnolia", "petunia",  "zinnia"};

const List kInsects = {
    "ant",      "caterpillar", "flea",     "locust",   "spider",  "bedbug",  "centipede",
    "fly",      "maggot",      "tarantula", "bee",      "cockroach", "gnat",   "mosquito",
    "termite",  "beetle",      "cricket",  "hornet",   "moth",    "wasp",    "blackfly",
    "dragonfly", "horsefly",   "roach",    "weevil"};

const List kInstruments = {
    "bagpipe", "cello",   "guitar",      "lute",   "trombone", "banjo",  "clarinet",
    "harmonica", "mandolin", "trumpet",  "bassoon", "drum",    "harp",   "oboe",
    "tuba",    "bell",    "fiddle",      "harpsichord", "piano", "viola", "bongo",
    "flute",   "horn",    "saxophone",   "violin"};

const List kWeapons = {
    "arrow",   "club",    "gun",     "missile", "spear",   "axe",     "dagger",
    "harpoon", "pistol",  "sword",   "blade",   "dynamite", "hatchet", "rifle",
    "tank",    "bomb",    "firearm", "knife",   "shotgun", "teargas", "cannon",
    "grenade", "mace",    "slingshot", "whip"};

const List kEuroNames32 = {
    "Adam",     "Harry",   "Josh",      "Roger",  "Alan",   "Frank",    "Justin",
    "Ryan",     "Andrew",  "Jack",      "Matthew", "Stephen", "Brad",    "Greg",
    "Paul",     "Jonathan", "Peter",    "Amanda", "Courtney", "Heather", "Melanie",
    "Katie",    "Betsy",   "Kristin",   "Nancy",  "Stephanie", "Ellen",  "Lauren",
    "Colleen",  "Emily",   "Megan",     "Rachel"};

const List kAfroNames32 = {
    "Alonzo",  "Jamel",    "Theo",     "Alphonse", "Jerome",   "Leroy",    "Torrance",
    "Darnell", "Lamar",    "Lionel",   "Tyree",    "Deion",    "Lamont",   "Malik",
    "Terrence", "Tyrone",  "Lavon",    "Marcellus", "Wardell",  "Nichelle", "Shereen",
    "Ebony",   "Latisha",  "Shaniqua", "Jasmine",  "Tanisha",  "Tia",      "Lakisha",
    "Latoya",  "Yolanda",  "Malika",   "Yvette"};

const List kEuroNames16 = {
    "Brad",   "Brendan", "Geoffrey", "Greg",   "Brett",  "Matthew",  "Neil",
    "Todd",   "Allison", "Anne",     "Carrie", "Emily",  "Jill",     "Laurie",
    "Meredith", "Sarah"};

const List kAfroNames16 = {
    "Darnell", "Hakim",  "Jermaine", "Kareem",  "Jamal",  "Leroy",   "Rasheed",
    "Tyrone",  "Aisha",  "Ebony",    "Keisha",  "Kenya",  "Lakisha", "Latoya",
    "Tamika",  "Tanisha"};

const List kPleasant8 = {"joy",      "love",   "peace",    "wonderful",
                         "pleasure", "friend", "laughter", "happy"};

const List kUnpleasant8 = {"agony", "terrible", "horrible", "nasty",
                           "evil",  "war",      "awful",    "failure"};

const List kCareer = {"executive", "management", "professional", "corporation",
                      "salary",    "office",     "business",     "career"};

const List kFamily = {"home",    "parents",  "children", "family",
                      "cousins", "marriage", "wedding",  "relatives"};

const List kMaleNames8 = {"John", "Paul", "Mike", "Kevin", "Steve", "Greg", "Jeff", "Bill"};

const List kFemaleNames8 = {"Amy", "Joan", "Lisa", "Sarah", "Diana", "Kate", "Ann", "Donna"};

const List kMaleTerms = {"male", "man", "boy", "brother", "he", "him", "his", "son"};

const List kFemaleTerms = {"female", "woman", "girl", "sister",
                           "she",    "her",   "hers", "daughter"};

const List kMath = {"math",      "algebra",     "geometry", "calculus",
                    "equations", "computation", "numbers",  "addition"};

const List kArts = {"poetry", "art",      "dance", "literature",
                    "novel",  "symphony", "drama", "sculpture"};

const List kMaleTerms2 = {"brother", "father", "uncle", "grandfather",
                          "son",     "he",     "his",   "him"};

const List kFemaleTerms2 = {"sister",   "mother", "aunt", "grandmother",
                            "daughter", "she",    "hers", "her"};

const List kScience = {"science",  "technology", "physics",    "chemistry",
                       "Einstein", "NASA",       "experiment", "astronomy"};

const List kArts2 = {"poetry",     "art",   "Shakespeare", "dance",
                     "literature", "novel", "symphony",    "drama"};

const List kTemporary = {"impermanent", "unstable", "variable", "fleeting",
                         "short-term",  "brief",    "occasional"};

const List kPermanent = {"stable",  "always",    "constant", "persistent",
                         "chronic", "prolonged", "forever"};

const List kMentalIllness = {"sad",     "hopeless",  "gloomy",
                             "tearful", "miserable", "depressed"};

const List kPhysicalIllness = {"sick",    "illness", "influenza",
                               "disease", "virus",   "cancer"};

const List kYoungNames = {"Tiffany", "Michelle", "Cindy", "Kristy",
                          "Brad",    "Eric",     "Joey",  "Billy"};

const List kOldNames = {"Ethel", "Bernice", "Gertrude", "Agnes",
                        "Cecil", "Wilbert", "Mortimer", "Edgar"};

// Historical-corpus variant of math/arts: lower-frequency stimuli swapped for
// forms attested across all decades ("mathematics" for "math", "calculation"
// for "calculus", "music" for "symphony").
const List kMathHist = {"mathematics", "algebra",     "geometry", "calculation",
                        "equations",   "computation", "numbers",  "addition"};

const List kArtsHist = {"poetry", "art",   "dance", "literature",
                        "novel",  "music", "drama", "sculpture"};

std::vector<BuiltinTest> make_builtin_tests() {
  std::vector<BuiltinTest> tests;
  auto add = [&tests](std::string name, std::string title, std::string xn, List x,
                      std::string yn, List y, std::string an, List a, std::string bn, List b) {
    tests.push_back({std::move(name), std::move(title), std::move(xn), std::move(yn),
                     std::move(an), std::move(bn), std::move(x), std::move(y), std::move(a),
                     std::move(b)});
  };

  add("flower-insect-pu25", "Flower/Insect P/U25", "Flower", kFlowers, "Insect", kInsects,
      "Pleasant", kPleasant25, "Unpleasant", kUnpleasant25);
  add("instrument-weapon-pu25", "Instrument/Weapon P/U25", "Instrument", kInstruments,
      "Weapon", kWeapons, "Pleasant", kPleasant25, "Unpleasant", kUnpleasant25);
  add("ea-aa32-pu25", "EA/AA32 P/U25", "European American", kEuroNames32, "African American",
      kAfroNames32, "Pleasant", kPleasant25, "Unpleasant", kUnpleasant25Names);
  add("ea-aa16-pu25", "EA/AA16 P/U25", "European American", kEuroNames16, "African American",
      kAfroNames16, "Pleasant", kPleasant25, "Unpleasant", kUnpleasant25Names);
  add("ea-aa16-pu8", "EA/AA16 P/U8", "European American", kEuroNames16, "African American",
      kAfroNames16, "Pleasant", kPleasant8, "Unpleasant", kUnpleasant8);
  add("male-female-career-family", "Male/Female Career/Family", "Male Names", kMaleNames8,
      "Female Names", kFemaleNames8, "Career", kCareer, "Family", kFamily);
  add("math-arts-male-female", "Math/Arts Male/Female", "Math", kMath, "Arts", kArts, "Male",
      kMaleTerms, "Female", kFemaleTerms);
  add("science-arts-male-female", "Science/Arts Male/Female", "Science", kScience, "Arts",
      kArts2, "Male", kMaleTerms2, "Female", kFemaleTerms2);
  add("mental-physical-tempperm", "Mental/Physical Temp/Perm", "Mental Illness",
      kMentalIllness, "Physical Illness", kPhysicalIllness, "Temporary", kTemporary,
      "Permanent", kPermanent);
  add("young-old-pu8", "Young/Old P/U8", "Young Names", kYoungNames, "Old Names", kOldNames,
      "Pleasant", kPleasant8, "Unpleasant", kUnpleasant8);
  add("math-arts-histwords", "Math/Arts (historical)", "Math", kMathHist, "Arts", kArtsHist,
      "Male", kMaleTerms, "Female", kFemaleTerms);
  return tests;
}

}  // namespace

const std::vector<BuiltinTest>& builtin_tests() {
  static const std::vector<BuiltinTest> tests = make_builtin_tests();
  return tests;
}

const BuiltinTest* find_builtin(std::string_view name) {
  for (const BuiltinTest& t : builtin_tests())
    if (t.name == name) return &t;
  return nullptr;
}

const std::vector<std::string>& builtin_suite_caliskan10() {
  static const std::vector<std::string> names = {
      "flower-insect-pu25",       "instrument-weapon-pu25",    "ea-aa32-pu25",
      "ea-aa16-pu25",             "ea-aa16-pu8",               "male-female-career-family",
      "math-arts-male-female",    "science-arts-male-female",  "mental-physical-tempperm",
      "young-old-pu8"};
  return names;
}

}  // namespace mleat
