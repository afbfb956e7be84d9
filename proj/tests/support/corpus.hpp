// Example sentences in the ASCII syntax, shared by the parser tests and the
// acceptance suite.

#ifndef PMODAL_TESTS_SUPPORT_CORPUS_HPP_
#define PMODAL_TESTS_SUPPORT_CORPUS_HPP_

namespace pmodal::testing {

inline const char* const kCorpus[] = {
    "Plays-sax(Jane) & P[0.8](Miss-America(Jane))",
    "P[0.5](P[0.67](Heads))",
    "P[0.2](Cloudy & P[0.3](Rain))",
    "exists x. Employee(x) & P[0.7](Thief(x))",
    "P[.5](A)",
    "P[0.8](P[0.2](A) & P[0.3](B))",
    "P2[.5](A)",
    "P2[.8](P1[.2](A) & P1[.3](B))",
    "P2[.35](H)",
    "P2[.15](H & P1[.5](H))",
    "P2[.3](P1[.5](H))",
    "P[1](H | T)",
    "P[1](H) | P[1](T)",
    "forall x. Missile(x) -> P2[.8](Stopped(x))",
    "P2[.8](forall x. Missile(x) -> Stopped(x))",
    "(forall x. P[0](picked(x))) & P[1](exists x. picked(x))",
    "(forall x. box ~picked(x)) & box (exists x. picked(x))",
    "box (H | T)",
    "box H | box T",
    "dia box H & dia box T",
};

}  // namespace pmodal::testing

#endif  // PMODAL_TESTS_SUPPORT_CORPUS_HPP_
