#include <fstream>
#include <sstream>
#include <stdexcept>

#include "arena/judging.hpp"

namespace arena {

namespace {

using Target = ExtractionRule::Target;

// Both pairwise prompt families request a structured answer naming either
// slot; accept both "Sentence n" and "Pair n" phrasings.
std::vector<ExtractionRule> pairwise_rules() {
    return {
        {R"(sentence\s*1)", Target::ChoiceA},
        {R"(sentence\s*2)", Target::ChoiceB},
        {R"(pair\s*1)", Target::ChoiceA},
        {R"(pair\s*2)", Target::ChoiceB},
    };
}

}  // namespace

PromptTemplate cola_pairwise_template() {
    PromptTemplate t;
    t.name = "cola-pairwise";
    t.body =
        "You are an expert linguist deciding whether sentences are "
        "grammatically acceptable or not. Your task is to take in a pair of "
        "sentences and decide which is more acceptable. The output format "
        "should be {\"choice\": <Sentence>, \"reasoning\": <your "
        "reasoning>}, where <Sentence> should be the more acceptable or "
        "less unacceptable sentence, either \"Sentence 1\" or \"Sentence "
        "2\". Here are the two sentences.\n\n"
        "Sentence 1: {text1}\n\n"
        "Sentence 2: {text2}";
    t.rules = pairwise_rules();
    t.positive_class = "Acceptable";
    t.negative_class = "Unacceptable";
    return t;
}

PromptTemplate cola_single_template() {
    PromptTemplate t;
    t.name = "cola-single";
    t.body =
        "Please read the following sentence and decide whether it is "
        "\"acceptable\" in a linguistic sense (i.e., grammatical). Don't "
        "explain your reasoning, just answer \"Yes\" (acceptable) or \"No\" "
        "(unacceptable) on a new line.{steering}\n\n{text}";
    t.rules = {
        {R"(\byes\b)", Target::LabelPos},
        {R"(\bno\b)", Target::LabelNeg},
    };
    t.positive_class = "Acceptable";
    t.negative_class = "Unacceptable";
    return t;
}

PromptTemplate clinifact_pairwise_template() {
    PromptTemplate t;
    t.name = "clinifact-pairwise";
    t.body =
        "You are a biomedical researcher evaluating whether given "
        "scientific claims and their corresponding abstracts report "
        "positive results (TRUE) or not (FALSE). If an abstract presents "
        "inconclusive findings or does not provide information relevant to "
        "the claim, the answer is FALSE. Your task is to compare two "
        "claim-abstract pairs and determine which one is more likely to be "
        "classified as TRUE. If both pairs should be answered \"TRUE\", "
        "choose the one with higher confidence. The output format should "
        "be {\"choice\": <Pair>, \"reasoning\": <your reasoning>}, where "
        "<Pair> should be the claim abstract pair more likely to have the "
        "answer TRUE, either \"Pair 1\" or \"Pair 2\". Here are the two "
        "questions.\n\n"
        "Pair 1: {text1}\n\n"
        "Pair 2: {text2}";
    t.rules = pairwise_rules();
    t.positive_class = "TRUE";
    t.negative_class = "FALSE";
    return t;
}

PromptTemplate clinifact_single_template() {
    PromptTemplate t;
    t.name = "clinifact-single";
    t.body =
        "Instruction: Given a scientific claim and an abstract, determine "
        "if the abstract reports positive results (TRUE) or not (FALSE) "
        "about the claim. The task is to classify the pair claim abstract "
        "as follows: TRUE: if the abstract provides positive support for "
        "the claim. FALSE: if the abstract provides negative or "
        "inconclusive support for the claim or if the abstract provides "
        "contextual or background information without directly reporting "
        "results about the claim.{steering}\n\n{text}";
    t.rules = {
        {R"(\btrue\b)", Target::LabelPos},
        {R"(\bfalse\b)", Target::LabelNeg},
    };
    t.positive_class = "TRUE";
    t.negative_class = "FALSE";
    return t;
}

PromptTemplate load_template_file(const std::string& path,
                                  const PromptTemplate& like) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open template file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    PromptTemplate t = like;
    t.name = path;
    t.body = buf.str();
    return t;
}

PromptTemplate resolve_template(const std::string& name_or_path,
                                bool pairwise) {
    if (name_or_path.empty() || name_or_path == "cola") {
        return pairwise ? cola_pairwise_template() : cola_single_template();
    }
    if (name_or_path == "clinifact") {
        return pairwise ? clinifact_pairwise_template()
                        : clinifact_single_template();
    }
    // Anything else is a file path; reuse the generic pairwise/single rules.
    return load_template_file(
        name_or_path,
        pairwise ? cola_pairwise_template() : cola_single_template());
}

}  // namespace arena
