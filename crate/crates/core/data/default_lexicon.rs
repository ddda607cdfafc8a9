// Academic-register words and plain single-word substitutes.
// No substitute is itself a key.

pub(crate) static DEFAULT_PAIRS: [(&str, &str); 220] = [
    ("abundant", "plenty"),
    ("accelerate", "speed"),
    ("accommodate", "fit"),
    ("accompany", "join"),
    ("accomplish", "do"),
    ("accumulate", "collect"),
    ("accurate", "correct"),
    ("acquire", "get"),
    ("acquired", "got"),
    ("adequate", "enough"),
    ("adjacent", "near"),
    ("administer", "manage"),
    ("advantageous", "useful"),
    ("alleviate", "ease"),
    ("allocate", "give"),
    ("alter", "change"),
    ("alteration", "change"),
    ("amend", "fix"),
    ("anticipate", "expect"),
    ("apparent", "clear"),
    ("appropriate", "right"),
    ("approximate", "rough"),
    ("approximately", "about"),
    ("ascertain", "learn"),
    ("assist", "help"),
    ("assistance", "help"),
    ("assisted", "helped"),
    ("attain", "reach"),
    ("attempt", "try"),
    ("beneficial", "useful"),
    ("bestow", "give"),
    ("capability", "ability"),
    ("cease", "stop"),
    ("collaborate", "work"),
    ("commence", "start"),
    ("commenced", "started"),
    ("commencement", "start"),
    ("communicate", "talk"),
    ("compel", "force"),
    ("competent", "able"),
    ("compile", "collect"),
    ("comprehend", "understand"),
    ("comprehensive", "full"),
    ("conceal", "hide"),
    ("concerning", "about"),
    ("conclude", "end"),
    ("consequently", "so"),
    ("considerable", "large"),
    ("constitute", "form"),
    ("construct", "build"),
    ("constructed", "built"),
    ("construction", "building"),
    ("consume", "use"),
    ("contemporary", "modern"),
    ("currently", "now"),
    ("deceased", "dead"),
    ("decline", "fall"),
    ("deem", "think"),
    ("demonstrate", "show"),
    ("demonstrated", "showed"),
    ("demonstrates", "shows"),
    ("depart", "leave"),
    ("designate", "name"),
    ("desire", "want"),
    ("determine", "decide"),
    ("detrimental", "harmful"),
    ("diminish", "lessen"),
    ("disseminate", "spread"),
    ("duration", "length"),
    ("elderly", "old"),
    ("elevated", "high"),
    ("eliminate", "remove"),
    ("eliminated", "removed"),
    ("emphasize", "stress"),
    ("employ", "use"),
    ("encounter", "meet"),
    ("endeavor", "try"),
    ("endeavour", "try"),
    ("enhance", "improve"),
    ("enormous", "huge"),
    ("enumerate", "list"),
    ("equitable", "fair"),
    ("equivalent", "equal"),
    ("erroneous", "wrong"),
    ("establish", "set"),
    ("evaluate", "judge"),
    ("evident", "clear"),
    ("exceedingly", "very"),
    ("excessive", "extreme"),
    ("exclusively", "only"),
    ("exhibit", "show"),
    ("expedite", "hurry"),
    ("expenditure", "cost"),
    ("facilitate", "help"),
    ("feasible", "possible"),
    ("finalize", "finish"),
    ("fortunate", "lucky"),
    ("frequently", "often"),
    ("fundamental", "basic"),
    ("furthermore", "also"),
    ("hazardous", "dangerous"),
    ("hence", "so"),
    ("identical", "same"),
    ("illustrate", "show"),
    ("immediately", "now"),
    ("imperative", "vital"),
    ("implement", "apply"),
    ("inception", "start"),
    ("indicate", "show"),
    ("indicated", "showed"),
    ("indicates", "shows"),
    ("indication", "sign"),
    ("inexpensive", "cheap"),
    ("initial", "first"),
    ("initially", "first"),
    ("initiate", "start"),
    ("innovative", "new"),
    ("inquire", "ask"),
    ("insufficient", "few"),
    ("intend", "plan"),
    ("invariably", "always"),
    ("locate", "find"),
    ("magnitude", "size"),
    ("maintain", "keep"),
    ("manufacture", "make"),
    ("maximum", "most"),
    ("merely", "only"),
    ("methodology", "method"),
    ("minimal", "small"),
    ("minimum", "least"),
    ("moreover", "also"),
    ("necessitate", "need"),
    ("nevertheless", "still"),
    ("notify", "tell"),
    ("notwithstanding", "despite"),
    ("numerous", "many"),
    ("objective", "goal"),
    ("observe", "see"),
    ("obtain", "get"),
    ("obtained", "got"),
    ("occasionally", "sometimes"),
    ("occur", "happen"),
    ("occurred", "happened"),
    ("occurrence", "event"),
    ("occurs", "happens"),
    ("operate", "run"),
    ("optimal", "best"),
    ("originate", "begin"),
    ("outstanding", "great"),
    ("participate", "join"),
    ("perceive", "see"),
    ("perform", "do"),
    ("permit", "allow"),
    ("persist", "continue"),
    ("perspective", "view"),
    ("possess", "have"),
    ("potentially", "possibly"),
    ("preceding", "previous"),
    ("predominantly", "mostly"),
    ("preliminary", "early"),
    ("presently", "now"),
    ("previously", "before"),
    ("principal", "main"),
    ("prioritize", "rank"),
    ("proceed", "go"),
    ("procure", "get"),
    ("proficient", "skilled"),
    ("prohibit", "ban"),
    ("prominent", "famous"),
    ("promptly", "quickly"),
    ("purchase", "buy"),
    ("purchased", "bought"),
    ("pursue", "follow"),
    ("regarding", "about"),
    ("relocate", "move"),
    ("remainder", "rest"),
    ("remuneration", "pay"),
    ("render", "make"),
    ("request", "ask"),
    ("require", "need"),
    ("required", "needed"),
    ("requirement", "need"),
    ("requires", "needs"),
    ("reside", "live"),
    ("residence", "home"),
    ("respond", "answer"),
    ("retain", "keep"),
    ("reveal", "show"),
    ("scrutinize", "check"),
    ("select", "choose"),
    ("significant", "important"),
    ("significantly", "greatly"),
    ("similarly", "likewise"),
    ("solely", "only"),
    ("somewhat", "rather"),
    ("specified", "given"),
    ("subsequent", "later"),
    ("subsequently", "later"),
    ("substantial", "large"),
    ("sufficient", "enough"),
    ("summon", "call"),
    ("terminate", "end"),
    ("terminated", "ended"),
    ("thereby", "thus"),
    ("therefore", "so"),
    ("transmit", "send"),
    ("transportation", "transport"),
    ("ultimately", "finally"),
    ("undertake", "do"),
    ("utilise", "use"),
    ("utilization", "use"),
    ("utilize", "use"),
    ("utilized", "used"),
    ("utilizes", "uses"),
    ("velocity", "speed"),
    ("verify", "check"),
    ("virtually", "almost"),
    ("visualize", "imagine"),
    ("voluminous", "large"),
    ("whereas", "while"),
];
