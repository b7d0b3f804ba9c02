"""English stoplist used by keyword extraction.

Function words plus the conversational fillers that dominate chit-chat
dialogue data. Versioned here so keyword extraction stays reproducible;
edits change every downstream graph, so treat additions as breaking.
"""

STOPWORDS = frozenset({
    "a", "able", "about", "above", "across", "actually", "after", "afterwards",
    "again", "against", "ago", "all", "almost", "alone", "along", "already",
    "also", "although", "always", "am", "amid", "among", "amongst", "an",
    "and", "another", "any", "anybody", "anyhow", "anyone", "anything",
    "anyway", "anywhere", "are", "aren", "around", "as", "at", "back",
    "basically", "be", "became", "because", "become", "becomes", "becoming",
    "been", "before", "beforehand", "behind", "being", "below", "beneath",
    "beside", "besides", "between", "beyond", "both", "but", "by", "can",
    "cannot", "cant", "certain", "certainly", "could", "couldnt", "despite",
    "did", "didnt", "do", "does", "doesnt", "doing", "done", "dont", "down",
    "during", "each", "either", "else", "elsewhere", "enough", "etc", "even",
    "ever", "every", "everybody", "everyone", "everything", "everywhere",
    "except", "far", "few", "first", "for", "from", "further", "get", "gets",
    "getting", "go", "goes", "going", "gone", "gonna", "got", "gotta", "had",
    "haha", "has", "hasnt", "have", "havent", "having", "he", "hello",
    "hence", "her", "here", "hereafter", "hereby", "herein", "hers",
    "herself", "hey", "hi", "him", "himself", "his", "hmm", "how", "however",
    "huh", "hundred", "i", "ie", "if", "in", "indeed", "inside", "instead",
    "into", "is", "isnt", "it", "its", "itself", "just", "kinda", "last",
    "later", "least", "less", "let", "lets", "like", "likely", "lol", "lot",
    "lots", "made", "make", "many", "may", "maybe", "me", "meanwhile",
    "might", "million", "mine", "more", "moreover", "most", "mostly", "much",
    "must", "my", "myself", "near", "need", "neither", "never",
    "nevertheless", "next", "no", "nobody", "none", "nonetheless", "noone",
    "nor", "not", "nothing", "now", "nowhere", "of", "off", "often", "oh",
    "ok", "okay", "on", "once", "one", "ones", "only", "onto", "or", "other",
    "others", "otherwise", "ought", "our", "ours", "ourselves", "out",
    "outside", "over", "own", "past", "per", "perhaps", "please", "possibly",
    "pretty", "probably", "quite", "rarely", "rather", "re", "really",
    "same", "second", "seldom", "several", "shall", "she", "should",
    "shouldnt", "simply", "since", "so", "some", "somebody", "somehow",
    "someone", "something", "sometime", "sometimes", "somewhat", "somewhere",
    "soon", "sorta", "still", "such", "sure", "surely", "than", "thank",
    "thanks", "that", "the", "their", "theirs", "them", "themselves", "then",
    "thence", "there", "thereafter", "thereby", "therefore", "therein",
    "thereupon", "these", "they", "third", "this", "those", "though",
    "three", "through", "throughout", "thus", "till", "to", "today",
    "together", "tomorrow", "too", "toward", "towards", "truly", "twice",
    "two", "uh", "um", "under", "underneath", "unless", "until", "unto",
    "up", "upon", "us", "usually", "very", "via", "vs", "wanna", "was",
    "wasnt", "we", "well", "went", "were", "werent", "what", "whatever",
    "when", "whenever", "where", "whereafter", "whereas", "whereby",
    "wherein", "wherever", "whether", "which", "whichever", "while",
    "whilst", "who", "whoever", "whole", "whom", "whose", "why", "will",
    "with", "within", "without", "wont", "would", "wouldnt", "wow", "yeah",
    "yep", "yes", "yesterday", "yet", "you", "your", "yours", "yourself",
    "yourselves",
})
