// Built-in tagging lexicon. Mostly closed-class words, plus the common
// evaluative adjectives/adverbs and review verbs that suffix rules cannot
// recover. Nouns listed here are the ones whose suffix would otherwise
// mislead the rules (-s, -ly, -est).

#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>

#include "reviewforge/types.hpp"

namespace reviewforge::detail {

namespace {

const std::pair<Tag, const char*> kEntries[] = {
    {Tag::DT, "the a an this that these those every each some any no all both either neither another such"},
    {Tag::PRP,
     "i me my mine myself you your yours yourself he him his himself she her hers herself it its itself "
     "we us our ours ourselves they them their theirs themselves who whom whose what which"},
    {Tag::CC, "and or but nor yet plus"},
    {Tag::IN,
     "of in on at by for with from to into onto about above below under over after before during through "
     "between against among without within than because since while although though if unless until upon "
     "via per as whether around near across behind beyond despite toward towards"},
    {Tag::CD, "zero one two three four five six seven eight nine ten eleven twelve twenty thirty hundred thousand million"},
    {Tag::VB,
     "is are was were be been being am 's 're 've 'm 'd 'll do does did done doing have has had having "
     "get gets got getting make makes made go goes went gone come comes came seem seems seemed look looks "
     "looked feel feels felt buy buys bought use uses used work works worked take takes took taken give "
     "gives gave given say says said know knew known think thought want wants wanted need needs needed "
     "love loves loved hate hates hated like likes liked returned break breaks broke charges "
     "charged arrive arrived arrives ship ships shipped die dies died stops stopped recommend "
     "recommends recommended expect expected try tries tried can could will would shall should may might "
     "must ordered keep keeps kept run runs ran hold holds held lasts lasted dropped "
     "fits sounded called send sent wish received receive paid pay"},
    {Tag::RB,
     "very really quite too so also just not never hardly always often sometimes usually extremely "
     "incredibly pretty fairly rather somewhat highly absolutely totally completely even still already "
     "only almost well n't here there now then again ever much barely truly super overly slightly "
     "definitely simply especially particularly surprisingly amazingly perfectly insanely exceptionally "
     "remarkably terribly awfully seriously reasonably relatively way quickly"},
    {Tag::RBR, "more less"},
    {Tag::RBS, "most least"},
    {Tag::JJ,
     "good great bad nice poor cheap expensive excellent awesome amazing fantastic wonderful beautiful "
     "terrible horrible awful decent fine solid sharp blurry clear bright dark heavy light small large big "
     "tiny huge long short fast slow quick easy hard difficult simple stiff soft loud quiet thin thick new "
     "old happy sad perfect cool tricky faulty rich low high weak strong durable reliable unreliable "
     "useless useful comfortable uncomfortable flimsy sturdy smooth rough crisp responsive sluggish "
     "disappointing impressive annoying lovely ugly friendly bittersweet unbelievable overpriced pricey "
     "noisy glossy fragile superb outstanding mediocre average okay ok favorite broken vivid dull dim "
     "stunning gorgeous horrid lousy crappy buggy laggy stable intuitive confusing clunky sleek elegant "
     "pleasant unpleasant rugged satisfied happy unhappy worth worthless generous compact portable "
     "accurate inaccurate consistent inconsistent grainy fuzzy washed speedy snappy costly affordable "
     "reasonable"},
    {Tag::JJR,
     "better worse cheaper faster bigger smaller larger lighter heavier richer easier harder louder "
     "brighter sharper slower clearer longer shorter higher lower thinner thicker nicer newer older"},
    {Tag::JJS, "best worst coolest"},
    {Tag::NN,
     "test rest interest request guest chest forest nest quest digest family supply assembly reply ally "
     "jelly lens glass class series news bus status canvas bias gas yesterday today tomorrow os gps "
     "price case camera phone battery screen quality picture photo video sound standard thing stuff "
     "speaker keyboard display button software hardware service issue problem time money value product "
     "item device life size weight design color colour"},
    {Tag::NNS, "pros cons specs headphones earphones glasses batteries pictures photos videos"},
};

}  // namespace

std::unordered_map<std::string, Tag> builtin_lexicon()
{
    std::unordered_map<std::string, Tag> lexicon;
    for (const auto& [tag, words] : kEntries) {
        std::istringstream in(words);
        std::string word;
        while (in >> word) lexicon.emplace(word, tag);
    }
    return lexicon;
}

}  // namespace reviewforge::detail
