// Generated by gen_specfun_tables.py; do not edit.

/// (alpha, beta, z, E_{alpha,beta}(z))
pub const ML_TABLE: [(f64, f64, f64, f64); 215] = [
    (0.55, 0.55, -5.0, 1.1263449881053658975e-2),
    (0.55, 0.55, -4.5, 1.3809479914629958589e-2),
    (0.55, 0.55, -4.0, 1.7295003001464092356e-2),
    (0.55, 0.55, -3.5, 2.2225356723996902691e-2),
    (0.55, 0.55, -3.0, 2.9479140615188452747e-2),
    (0.55, 0.55, -2.5, 4.0673578108260638222e-2),
    (0.55, 0.55, -2.0, 5.8993205672528029642e-2),
    (0.55, 0.55, -1.5, 9.1231977961316379638e-2),
    (0.55, 0.55, -1.0, 1.5333441989756003439e-1),
    (0.55, 0.55, -0.5, 2.8720860666652091564e-1),
    (0.55, 0.55, 0.0, 6.1876429885160908531e-1),
    (0.55, 0.55, 0.5, 1.5901566276296087396),
    (0.55, 0.55, 1.0, 5.0582602963863535907),
    (0.55, 0.55, 1.5, 2.0554791715768608499e+1),
    (0.55, 0.55, 2.0, 1.0904369537172853658e+2),
    (0.55, 0.55, 2.5, 7.6390603005605412906e+2),
    (0.55, 0.55, 3.0, 7.0949689405665942871e+3),
    (0.55, 0.55, 3.5, 8.7338007551362616453e+4),
    (0.55, 0.55, 4.0, 1.4216491176944174099e+6),
    (0.55, 0.55, 4.5, 3.050356216360781315e+7),
    (0.55, 0.55, 5.0, 8.5978870541870750261e+8),
    (0.55, 1.0, -5.0, 1.0313494422460626806e-1),
    (0.55, 1.0, -4.5, 1.1447412962474396567e-1),
    (0.55, 1.0, -4.0, 1.2852585534033977176e-1),
    (0.55, 1.0, -3.5, 1.463538528918313265e-1),
    (0.55, 1.0, -3.0, 1.6963268988843700643e-1),
    (0.55, 1.0, -2.5, 2.0113183662671565127e-1),
    (0.55, 1.0, -2.0, 2.4571080138542008902e-1),
    (0.55, 1.0, -1.5, 3.1252841032769330236e-1),
    (0.55, 1.0, -1.0, 4.2041169867489100254e-1),
    (0.55, 1.0, -0.5, 6.1236664961089761827e-1),
    (0.55, 1.0, 0.0, 1.0),
    (0.55, 1.0, 0.5, 1.9207024101044769713),
    (0.55, 1.0, 1.0, 4.5944667716780649229),
    (0.55, 1.0, 1.5, 1.4435464418184554584e+1),
    (0.55, 1.0, 2.0, 6.1604634337492893231e+1),
    (0.55, 1.0, 2.5, 3.6076085121218852991e+2),
    (0.55, 1.0, 3.0, 2.8877136231912153398e+3),
    (0.55, 1.0, 3.5, 3.1336808142426503795e+4),
    (0.55, 1.0, 4.0, 4.5729638133616509354e+5),
    (0.55, 1.0, 4.5, 8.9105385017534220518e+6),
    (0.55, 1.0, 5.0, 2.304131103610768572e+8),
    (0.75, 0.75, -5.0, 1.2140520971468211535e-2),
    (0.75, 0.75, -4.5, 1.5439124092629203291e-2),
    (0.75, 0.75, -4.0, 2.0159456928086310396e-2),
    (0.75, 0.75, -3.5, 2.715172322588632685e-2),
    (0.75, 0.75, -3.0, 3.7918187563107108741e-2),
    (0.75, 0.75, -2.5, 5.5222034307775473183e-2),
    (0.75, 0.75, -2.0, 8.4363572245660564019e-2),
    (0.75, 0.75, -1.5, 1.3595987218428514162e-1),
    (0.75, 0.75, -1.0, 2.3223772010096143194e-1),
    (0.75, 0.75, -0.5, 4.2184231246858204849e-1),
    (0.75, 0.75, 0.0, 8.1604893909826298108e-1),
    (0.75, 0.75, 0.5, 1.6807270339672676018),
    (0.75, 0.75, 1.0, 3.6787264341661804746),
    (0.75, 0.75, 1.5, 8.5323043856361520563),
    (0.75, 0.75, 2.0, 2.0898484277658940826e+1),
    (0.75, 0.75, 2.5, 5.386316203808337762e+1),
    (0.75, 0.75, 3.0, 1.4557961543706038234e+2),
    (0.75, 0.75, 3.5, 4.1130090426553777833e+2),
    (0.75, 0.75, 4.0, 1.2112294239249338505e+3),
    (0.75, 0.75, 4.5, 3.7084873246304907144e+3),
    (0.75, 0.75, 5.0, 1.1778623429457295115e+4),
    (0.75, 1.0, -5.0, 6.7923974332643942122e-2),
    (0.75, 1.0, -4.5, 7.7054661036949091442e-2),
    (0.75, 1.0, -4.0, 8.8822936312743901978e-2),
    (0.75, 1.0, -3.5, 1.0443422814561072504e-1),
    (0.75, 1.0, -3.0, 1.2585513691184152704e-1),
    (0.75, 1.0, -2.5, 1.5642695861194744289e-1),
    (0.75, 1.0, -2.0, 2.0207848341295445435e-1),
    (0.75, 1.0, -1.5, 2.7382227983917813457e-1),
    (0.75, 1.0, -1.0, 3.9310830281575406177e-1),
    (0.75, 1.0, -0.5, 6.0379034509524675559e-1),
    (0.75, 1.0, 0.0, 1.0),
    (0.75, 1.0, 0.5, 1.7937773945015026827),
    (0.75, 1.0, 1.0, 3.4858662200517438713),
    (0.75, 1.0, 1.5, 7.3142232927861618284),
    (0.75, 1.0, 2.0, 1.6477360564726636035e+1),
    (0.75, 1.0, 2.5, 3.9595959078515355029e+1),
    (0.75, 1.0, 3.0, 1.0086180177510028035e+2),
    (0.75, 1.0, 3.5, 2.7082903096145436906e+2),
    (0.75, 1.0, 4.0, 7.6296668169426913489e+2),
    (0.75, 1.0, 4.5, 2.2462022215670805158e+3),
    (0.75, 1.0, 5.0, 6.8881316797401478446e+3),
    (1.0, 1.0, -5.0, 6.7379469990854670966e-3),
    (1.0, 1.0, -4.5, 1.1108996538242306496e-2),
    (1.0, 1.0, -4.0, 1.8315638888734180294e-2),
    (1.0, 1.0, -3.5, 3.019738342231850074e-2),
    (1.0, 1.0, -3.0, 4.9787068367863942979e-2),
    (1.0, 1.0, -2.5, 8.208499862389879517e-2),
    (1.0, 1.0, -2.0, 1.3533528323661269189e-1),
    (1.0, 1.0, -1.5, 2.2313016014842982893e-1),
    (1.0, 1.0, -1.0, 3.678794411714423216e-1),
    (1.0, 1.0, -0.5, 6.065306597126334236e-1),
    (1.0, 1.0, 0.0, 1.0),
    (1.0, 1.0, 0.5, 1.6487212707001281468),
    (1.0, 1.0, 1.0, 2.7182818284590452354),
    (1.0, 1.0, 1.5, 4.4816890703380648226),
    (1.0, 1.0, 2.0, 7.3890560989306502272),
    (1.0, 1.0, 2.5, 1.2182493960703473438e+1),
    (1.0, 1.0, 3.0, 2.0085536923187667741e+1),
    (1.0, 1.0, 3.5, 3.3115451958692313751e+1),
    (1.0, 1.0, 4.0, 5.4598150033144239078e+1),
    (1.0, 1.0, 4.5, 9.001713130052181355e+1),
    (1.0, 1.0, 5.0, 1.4841315910257660342e+2),
    (0.55, 0.55, -7.5, 5.0666699737587571828e-3),
    (0.55, 0.55, -10.0, 2.8519835180039090319e-3),
    (0.55, 0.55, -20.0, 7.0874022152318535306e-4),
    (0.55, 0.55, -35.0, 2.3023629832202751444e-4),
    (0.55, 0.55, -50.0, 1.1253557505467601967e-4),
    (0.55, 1.0, -7.5, 6.8757644239043578676e-2),
    (0.55, 1.0, -10.0, 5.1473574207990980301e-2),
    (0.55, 1.0, -20.0, 2.5605611839809558506e-2),
    (0.55, 1.0, -35.0, 1.4587301911635137965e-2),
    (0.55, 1.0, -50.0, 1.0197254378268012133e-2),
    (0.6, 0.6, -7.5, 5.1635894144771513233e-3),
    (0.6, 0.6, -10.0, 2.8711417613393081775e-3),
    (0.6, 0.6, -20.0, 6.9976531797853914304e-4),
    (0.6, 0.6, -35.0, 2.2539375389914013e-4),
    (0.6, 0.6, -50.0, 1.0979389735394112334e-4),
    (0.6, 1.0, -7.5, 6.2638906158043226933e-2),
    (0.6, 1.0, -10.0, 4.6589654426804280962e-2),
    (0.6, 1.0, -20.0, 2.2946564273258376396e-2),
    (0.6, 1.0, -35.0, 1.3016611692177908647e-2),
    (0.6, 1.0, -50.0, 9.0837447731034546371e-3),
    (0.75, 0.75, -7.5, 4.8265684265778027333e-3),
    (0.75, 0.75, -10.0, 2.5434431529668198927e-3),
    (0.75, 0.75, -20.0, 5.7356041295395037991e-4),
    (0.75, 0.75, -35.0, 1.7911599354276111735e-4),
    (0.75, 0.75, -50.0, 8.6221380547165753602e-5),
    (0.75, 1.0, -7.5, 4.2328719199446588699e-2),
    (0.75, 1.0, -10.0, 3.0643250976059637773e-2),
    (0.75, 1.0, -20.0, 1.4527522154459504195e-2),
    (0.75, 1.0, -35.0, 8.1166557604666110874e-3),
    (0.75, 1.0, -50.0, 5.6311878629451302351e-3),
    (0.9, 0.9, -7.5, 3.0855812383730362686e-3),
    (0.9, 0.9, -10.0, 1.434652362294128595e-3),
    (0.9, 0.9, -20.0, 2.8402595741192638794e-4),
    (0.9, 0.9, -35.0, 8.5345464215583253658e-5),
    (0.9, 0.9, -50.0, 4.0536249580922190687e-5),
    (0.9, 1.0, -7.5, 1.8662932471857275844e-2),
    (0.9, 1.0, -10.0, 1.2820606051102099938e-2),
    (0.9, 1.0, -20.0, 5.7495078161091125836e-3),
    (0.9, 1.0, -35.0, 3.1556079491116557374e-3),
    (0.9, 1.0, -50.0, 2.1753530768569760498e-3),
    (0.99, 0.99, -1.0, 3.6159131535572008189e-1),
    (0.99, 0.99, -5.0, 7.1895423030289534532e-3),
    (0.99, 0.99, -19.0, 3.519492001056316206e-5),
    (0.99, 0.99, -40.0, 6.9140852218688775669e-6),
    (0.99, 1.0, -1.0, 3.685483180603396169e-1),
    (0.99, 1.0, -5.0, 9.7680921391741281708e-3),
    (0.99, 1.0, -19.0, 5.951487487205182955e-4),
    (0.99, 1.0, -40.0, 2.6482722935744498765e-4),
    (0.999, 0.999, -1.0, 3.6724764916903786101e-1),
    (0.999, 0.999, -5.0, 6.7842453147721392555e-3),
    (0.999, 0.999, -19.0, 3.5543939234906024716e-6),
    (0.999, 0.999, -40.0, 6.9523419239463188346e-7),
    (0.999, 1.0, -1.0, 3.6794468034194146973e-1),
    (0.999, 1.0, -5.0, 7.0439569266840408611e-3),
    (0.999, 1.0, -19.0, 5.9332115778728668647e-5),
    (0.999, 1.0, -40.0, 2.6367543533360512783e-5),
    (0.6, 0.6, -0.251188643150958, 4.5466496399494141173e-1),
    (0.6, 0.6, -1.0, 1.7110228338391675211e-1),
    (0.6, 0.6, -1.515716566510398, 9.968337288345766616e-2),
    (0.6, 0.6, -1.004754572603832, 1.7017663174228498394e-1),
    (0.6, 0.6, -4.0, 1.8264707855107769114e-2),
    (0.6, 0.6, -6.062866266041592, 7.9559486745066322817e-3),
    (0.6, 0.6, -6.2797160787739505, 7.409010023361566421e-3),
    (0.6, 0.6, -25.0, 4.4508979661223588114e-4),
    (0.6, 0.6, -37.89291416275995, 1.920084450145391611e-4),
    (0.6, 1.0, -0.251188643150958, 7.6787397547892653521e-1),
    (0.6, 1.0, -1.0, 4.1332734094310630052e-1),
    (0.6, 1.0, -1.515716566510398, 3.0058386667318318735e-1),
    (0.6, 1.0, -1.004754572603832, 4.1197514910938950052e-1),
    (0.6, 1.0, -4.0, 1.1953416195706787973e-1),
    (0.6, 1.0, -6.062866266041592, 7.7996154678847689415e-2),
    (0.6, 1.0, -6.2797160787739505, 7.5221310736459868852e-2),
    (0.6, 1.0, -25.0, 1.8295717331791215012e-2),
    (0.6, 1.0, -37.89291416275995, 1.2013576888346908757e-2),
    (0.75, 0.75, -0.1778279410038923, 6.407021278353248449e-1),
    (0.75, 0.75, -1.0, 2.3223772010096143194e-1),
    (0.75, 0.75, -1.681792830507429, 1.1356096636780672484e-1),
    (0.75, 0.75, -0.7113117640155692, 3.252979317030147723e-1),
    (0.75, 0.75, -4.0, 2.0159456928086310396e-2),
    (0.75, 0.75, -6.727171322029716, 6.171033607531682628e-3),
    (0.75, 0.75, -4.445698525097307, 1.5871449692420920578e-2),
    (0.75, 0.75, -25.0, 3.5951049915190702447e-4),
    (0.75, 0.75, -42.044820762685724, 1.2289463458798333338e-4),
    (0.75, 1.0, -0.1778279410038923, 8.2825053550963634822e-1),
    (0.75, 1.0, -1.0, 3.9310830281575406177e-1),
    (0.75, 1.0, -1.681792830507429, 2.4368204572017258937e-1),
    (0.75, 1.0, -0.7113117640155692, 4.9922369724716084917e-1),
    (0.75, 1.0, -4.0, 8.8822936312743901978e-2),
    (0.75, 1.0, -6.727171322029716, 4.7953196517138496822e-2),
    (0.75, 1.0, -4.445698525097307, 7.8188032939786230682e-2),
    (0.75, 1.0, -25.0, 1.1500180787169600566e-2),
    (0.75, 1.0, -42.044820762685724, 6.7230386677313193782e-3),
    (0.9, 0.9, -0.12589254117941673, 8.1035592553233834595e-1),
    (0.9, 0.9, -1.0, 3.0814879777662195447e-1),
    (0.9, 0.9, -1.8660659830736148, 1.2614172787242311156e-1),
    (0.9, 0.9, -0.5035701647176669, 5.2979592609941634398e-1),
    (0.9, 0.9, -4.0, 1.9923847142786249631e-2),
    (0.9, 0.9, -7.464263932294459, 3.1271474481407633184e-3),
    (0.9, 0.9, -3.147313529485418, 3.8955995949183396221e-2),
    (0.9, 0.9, -25.0, 1.7468551917377771927e-4),
    (0.9, 0.9, -46.65164957684037, 4.6804044190040689651e-5),
    (0.9, 1.0, -0.12589254117941673, 8.7809612302558492468e-1),
    (0.9, 1.0, -1.0, 3.7606602142464187902e-1),
    (0.9, 1.0, -1.8660659830736148, 1.8111547029743300302e-1),
    (0.9, 1.0, -0.5035701647176669, 6.0129970288930292407e-1),
    (0.9, 1.0, -4.0, 5.04111033144346163e-2),
    (0.9, 1.0, -7.464263932294459, 1.8786273355138271303e-2),
    (0.9, 1.0, -3.147313529485418, 7.7097181596553655796e-2),
    (0.9, 1.0, -25.0, 4.5121471218401887483e-3),
    (0.9, 1.0, -46.65164957684037, 2.3374039153249803953e-3),
];

/// (alpha, z, M_alpha(z))
pub const MAINARDI_TABLE: [(f64, f64, f64); 85] = [
    (0.1, 0.0, 9.3577872091287276926e-1),
    (0.1, 0.1, 8.5362733109555187698e-1),
    (0.1, 0.25, 7.4345849940024671891e-1),
    (0.1, 0.5, 5.8997719062309721462e-1),
    (0.1, 0.75, 4.6765467770189287184e-1),
    (0.1, 1.0, 3.7029046275149084335e-1),
    (0.1, 1.5, 2.3142825117505982177e-1),
    (0.1, 2.0, 1.4406688865856316572e-1),
    (0.1, 3.0, 5.521468504057680657e-2),
    (0.1, 4.0, 2.0877028014907261148e-2),
    (0.1, 5.0, 7.7972669344757914899e-3),
    (0.1, 8.0, 3.8093620796911724958e-4),
    (0.3, 0.0, 7.7038318386656600928e-1),
    (0.3, 0.1, 7.2585380294645183074e-1),
    (0.3, 0.25, 6.6136483500810148996e-1),
    (0.3, 0.5, 5.6100164873166428441e-1),
    (0.3, 0.75, 4.7054911080705183654e-1),
    (0.3, 1.0, 3.9052334188638717881e-1),
    (0.3, 1.5, 2.6115102031517885327e-1),
    (0.3, 2.0, 1.6840030622678312291e-1),
    (0.3, 3.0, 6.3511233653723873331e-2),
    (0.3, 4.0, 2.1334527126339507038e-2),
    (0.3, 5.0, 6.4665392145191338985e-3),
    (0.3, 8.0, 1.0608480026315098585e-4),
    (0.5, 0.0, 5.6418958354775628695e-1),
    (0.5, 0.1, 5.6278087121300959403e-1),
    (0.5, 0.25, 5.5544263479833125017e-1),
    (0.5, 0.5, 5.3000706468805712175e-1),
    (0.5, 0.75, 4.901764047729539339e-1),
    (0.5, 1.0, 4.3939128946772239705e-1),
    (0.5, 1.5, 3.2146553459760366453e-1),
    (0.5, 2.0, 2.0755374871029735167e-1),
    (0.5, 3.0, 5.9465144611814685766e-2),
    (0.5, 4.0, 1.0333492677046026929e-2),
    (0.5, 5.0, 1.0891421151763548602e-3),
    (0.5, 8.0, 6.3491173359332791342e-8),
    (0.55, 0.0, 5.0809486562716511878e-1),
    (0.55, 0.1, 5.1614342175847892694e-1),
    (0.55, 0.25, 5.2303902081663274762e-1),
    (0.55, 0.5, 5.1978064581545578783e-1),
    (0.55, 0.75, 4.9786997257816021084e-1),
    (0.55, 1.0, 4.5897661778082250695e-1),
    (0.55, 1.5, 3.4593235419796840507e-1),
    (0.55, 2.0, 2.2042033563813554924e-1),
    (0.55, 3.0, 5.2341994769662789268e-2),
    (0.55, 4.0, 5.8093412349074643786e-3),
    (0.55, 5.0, 2.8782872841533685523e-4),
    (0.55, 8.0, 1.9250667265035720596e-10),
    (0.6, 0.0, 4.5082419919441108952e-1),
    (0.6, 0.1, 4.6706906196213773188e-1),
    (0.6, 0.25, 4.8735575393369165978e-1),
    (0.6, 0.5, 5.0741926682516361353e-1),
    (0.6, 0.75, 5.0667748327323130366e-1),
    (0.6, 1.0, 4.832354333480618421e-1),
    (0.6, 1.5, 3.7703149021619494995e-1),
    (0.6, 2.0, 2.3387335110670508036e-1),
    (0.6, 3.0, 4.0521472224541048359e-2),
    (0.6, 4.0, 2.0543626980806318308e-3),
    (0.6, 5.0, 2.5504528476523854742e-5),
    (0.6, 8.0, 2.2673977499675395601e-15),
    (0.75, 0.0, 2.7581566283020931436e-1),
    (0.75, 0.1, 3.0529575094425359222e-1),
    (0.75, 0.25, 3.5411378407936103665e-1),
    (0.75, 0.5, 4.4502484123873669753e-1),
    (0.75, 0.75, 5.3710527502715850836e-1),
    (0.75, 1.0, 6.0659854359027597898e-1),
    (0.75, 1.5, 5.4873786222645633374e-1),
    (0.75, 2.0, 2.2514007014896749913e-1),
    (0.75, 3.0, 3.5126361023134093759e-4),
    (0.75, 4.0, 4.5046280751923516817e-12),
    (0.75, 5.0, 7.0532342151839238102e-29),
    (0.9, 0.0, 1.0511370061117775642e-1),
    (0.9, 0.1, 1.2473278550167990557e-1),
    (0.9, 0.25, 1.6477251827512048581e-1),
    (0.9, 0.5, 2.8004174208736580733e-1),
    (0.9, 0.75, 5.2025275460077277185e-1),
    (0.9, 1.0, 1.0081467456212712044),
    (0.9, 1.5, 4.5575251057063775959e-1),
    (0.9, 2.0, 7.8193669162217516934e-17),
    (0.95, 0.0, 5.1360843263583867207e-2),
    (0.95, 0.1, 6.2248741840562583647e-2),
    (0.95, 0.25, 8.6005269944310461671e-2),
    (0.95, 0.5, 1.673564382117445863e-1),
    (0.95, 0.75, 4.1774695409996514555e-1),
    (0.95, 1.0, 1.5361137992205616876),
];
