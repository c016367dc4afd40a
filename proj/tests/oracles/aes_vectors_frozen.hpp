// Generated by tests/oracles/aes_reference.py. Do not edit.
#pragma once

namespace oracle {

struct BlockVector { const char* key; const char* plaintext; const char* ciphertext; };
struct RoundKeyVector { const char* key; int round; const char* round_key; };
struct MacVector { const char* key; const char* message; const char* mac; };

inline constexpr BlockVector kBlocks[] = {
    {"000102030405060708090a0b0c0d0e0f", "00112233445566778899aabbccddeeff", "69c4e0d86a7b0430d8cdb78070b4c55a"},
    {"2b7e151628aed2a6abf7158809cf4f3c", "3243f6a8885a308d313198a2e0370734", "3925841d02dc09fbdc118597196a0b32"},
    {"00000000000000000000000000000000", "00000000000000000000000000000000", "66e94bd4ef8a2c3b884cfa59ca342b2e"},
    {"9bd1c55642cf265db7c1dd5e55043bb3", "ad4de6981fdd0c685bbf4cae9a152e1f", "ce3cea8e32bf828a68ac26fb8f585d64"},
    {"073353003c4c4dd36a6635d1f9769faf", "baa95f69eff8d6fd3fdbb50ef1bf9242", "b75a6ef1a1777e864d79deb188676d6b"},
    {"5e47603ad5378826ef6daf0ed1ddaada", "600754d1f5eeb284675c18aa6aeab770", "7a9072f177c8d2693f51f362c3510026"},
    {"54cae10f1d909a2eaffe0fcca9f7ab4a", "b6c6b953b335f985e90255d68a04f33c", "ed0bf5e093722d3adc066fc7279a2fd5"},
    {"3fd65c5fc586b9d26db20b8dc425eaed", "e413be40ded3c5c843029fbb74439ff6", "aac8723506149a19adad76a18247cb5d"},
    {"9e22163ddbf250597077600c13493828", "7ee6fb9db1692f2f489f0ebde2d28ee6", "0ee8cb85dc69207a17b803006dec7dff"},
    {"f6f40db472ccc1cdca55acb1cf12605f", "e36a19f1b249005cb5312a375225eae3", "c2de351cf8da51825f554a00fcc7ecd5"},
    {"68c5e8be98da135898516ccae846149f", "fe0a6992798aa3b84c4cc93e6ab48a29", "0f73642f85cddded2fe91aef78fba176"},
    {"d9ec16e14dde4d83382cba6f625faf31", "c6ff6ccaaad376be063f011bd6fa5dc9", "5d99940bdc0c87636351e3d706279024"},
    {"9222509958eeb73c8674f06d86059f0f", "cfb8d09dc88cdb1b702f9c0708ed8547", "0a0bef86d7dde2a50d08d06dcf3f2d5e"},
    {"0dd36ba74833c900b9b2ad72482f2ecc", "41ddcc610acea12a9ef31901c3d6f055", "d8e8487e894184981c9a75ba5d9f7022"},
    {"26491a8fd1c353f07f5eb558c7405f37", "23ee64f79259af289d44e3027bd8f051", "3d577fc6acdb959bb1edf02565b024e5"},
    {"66e511aeb5f83ea5c366bb6ee043ead3", "4a482a7788d47b7694d2c9eb5b52d78d", "7911b22c692356130d7abf2e2a5d7994"},
    {"a3b39c4f02d2a5911e12ddef002bd601", "b1fd8c6bae02effaecd7ec4dff679d2d", "b1f5ce751829919264334bd7db45e845"},
    {"fe8845b44c172a07b11fd8730c13da5a", "223bbc997951bbc99824a5137ec44bae", "25d788d653f584cf772cc51e38da7937"},
    {"1acc6772c9b585cad8895682cb7df8d1", "13c97fdb795c7e8f1893967694dde801", "df4b777de4680785e3604268fa192b5b"},
    {"5933b8764ef1a85758b486e88a5127d9", "a12a76738ddadcbeff307159622bb63c", "eb1df0dad051653bb16f91263d188b04"},
    {"e27a222c4bb0db02ab3427b9850aeb95", "cea9f5ffb19875097abcbcf005a3f91f", "32706045bb0df8fe92c04c6c4ca45a18"},
    {"b9bdc438413002aa657be1164cb857c4", "a988711fa4352d361e83d86e415e9686", "6bb5b25780a824589fefed51d2199881"},
    {"306a539910e5ee2ef58d51a3e1218a1d", "a2574022cd36725f1fd5820cd5728f39", "5bc8c6555564cc42857bcccde6063b6e"},
    {"c075e9c2ecf95424314366eb30ca27c1", "0aec206487f77448b49f6b5513000f71", "550586ae10f87ac7d5376c617e4843ac"},
    {"94f2b00763f5d3c0898eb106ba80c26f", "a1c0c30850006ae56704c1be05db7e00", "89de797df1ed4bab6e717ae5d1c09d74"},
    {"7038ec0d50e2e43f910aa6ece4dd2156", "0cb0327745bb0fec64d4e1099252536c", "64fd6bb77a9238fd8fce1422e2728804"},
    {"9d17d11a31b96dbb1ec1ada80c896abb", "777d075c4c6c124f491cacab9f82dd0c", "69ce41d30860a27f4ac839bc6350caf6"},
    {"1c23e35bbc34c7e4e4f081ff28575fb4", "1f5468d0fa7b1c115ec0a8df09666146", "006732d59782b4091c8be3aacb868223"},
    {"7a553029c60589faf3a6d381596b7ab2", "bee6352b4d1f6c838c0df25c34095925", "8971d23c9510325c3eac066f20b548de"},
    {"5db4cdbcfb0ab9a33e0c5c17c37988af", "86de91b8df1da2529e487d4347944e71", "950334fb96e25bcddfaaaa0da9aa3090"},
    {"72527fbc3c3b77738905d9d3c0d34f57", "20ffd7244833720376ff6938cd50b279", "185390c5a7b40627183d6a5171a6743f"},
    {"60775754c142d2dc30b29bf66df2651f", "89a5b7dba87d1eaba226c1f932254620", "3411fe9c4b9f599d39e3a972c9365ea6"},
    {"cb814b50efda4621296e0cd1c881e592", "7befc4e63b641fa39d5501d72fcd3dfc", "4bf5f864bf1d6720fe350f4725105cb0"},
    {"f2d7e1854f7c05f94f1713118456d214", "80d9f85fa7bf77f16a15a1b73a57ca81", "34e7341c53485ef43b75eebb83550da1"},
    {"29c8b24489236cb2120ed5b3dc5a2e25", "e3ea7d5142de48c7ac3be4aa1e1bcb46", "1d04d07b59ab3eff36b9275fd982b334"},
    {"cd8eff0eeb7fe7f29592230cfc10ad50", "0053217e4e7b56832616971bd51b8c28", "92e28bd23f4889d04f0e75273e4f251e"},
    {"ee06ff5893821583f81e1948f1efd3c6", "1cafabc40c9cc3a068552c1f7f2b00f1", "53ec89b37d23fdc6afd915a8a12d369f"},
    {"e155ec04995b9d762e166d91f9a7e005", "d82d38a575065b699b04fd27f293bf53", "974715f46f212dfbbcfbb451c16025f0"},
    {"5e1a01018d2ced95ad2022a904978e32", "c1cdb64aba4761441949bc8d9df2a397", "a23f8afc398a953629dba579442b48e2"},
    {"8d4c40710e3c02d3c38bd9fa9128f35d", "5f3adc838bd2523bbfe85782b67e9de3", "799e911ce435d662c3fc101a8e438cee"},
    {"19dc69147390f410bf80be20152d5d51", "4f3544c9100a3d8d044b9c01b9c42a7c", "5c80587bf61841702d24965adbca15eb"},
    {"bc20dc7266a12a54194aa19be4964a79", "d566939622b13ecb9bcf792d94b572a4", "92c2815f1101abaa2034ed6e2f4f465c"},
    {"a56958bf57f3db6c86cea1d25529dfcd", "0c25c8c97016453f5ef08985e656072f", "c7286cac9c54f556b2fbdb0b1b4b9f6d"},
    {"273a31495ddbf5c351270a66baf6ca80", "a7eab15dc2fa5be3fc21b82279e99400", "0719c5faa89bded68a1cd35aca7d5bbc"},
    {"3e2aaf1bac490289b71b43963e03923b", "8d0a13c6fe6e84e1da8929aa7cbbf7e8", "449e3d4640fee4ac04e72880a37add6b"},
    {"d3309d1e8d5069a4c5a27a80561bbbff", "48c02ccaf36ad533607abe89afe9957e", "51ac05b66e2520800f39089254cc2d67"},
    {"cafc1ca2b70f5271ff745303a086cd19", "a1dd8b5b6b5b501533fb0bb4cf57f9e8", "8e2ee2fcfaccb0455db0fd9755b82e5e"},
    {"6b2d480353ffe1635ac3632f79855bb9", "5afd2f71625d4c40ef18e6865b26c1f8", "fd6da97f96ecfa9ea012b9e7c6a78b30"},
    {"0b05b274b3e631cf837cd9852f45efa4", "9f6c73d4e5f64c5b4b6ed2f52f33cec8", "b429f2516a0375bbc07181dd4f4ba42f"},
    {"0acf4cee0c73f686be1646ad65df1392", "7d8b179c1c4344c3a1f46f6582f70e04", "f1c6d0c6cf407a8e243f380be98c7261"},
    {"d3e4ee6a9f51862f5a7ee6b37855a79a", "cdbb889293e9a9e3a2e4c2dc6470bd7e", "98589c52864b52cd47f619bc91ed7356"},
    {"6fceb2374cf89ac9e3e8ef3be81cf885", "0c118686588e5baf8f56451053fc7b9e", "8a22216990f2236982e1546d48d10f29"},
    {"4b461976ba88579b69cf70a99767a40f", "02c341ddde59e70740601da46674002e", "68b849edf3a6c47b715964f2659fb78a"},
    {"17764836400dbe4d5ff241ac51641bd4", "a17636e79fe4966fb1f5a89cdcfd8c7d", "eb35d05c46c0f082cbf702eba6a90522"},
    {"f972bd8c59341ef3b1d264d1e7e296c9", "62be0bd73d7eaeb0f16bda80f9cae007", "5f3bbb510250be0c4868440ee3c60f99"},
    {"8b256f2b030c8af7204d90d8efbf4c2b", "3e28f13370dd33980bb36efc34b4b45a", "eac45e6bf5d8d69347e181582566b90a"},
    {"c64f90c3098f6492ae6c845324e1090f", "687b876fc2e2e23f137a0a50f31f26d9", "e08f3a03ce348cee094bd020dba3dd1c"},
    {"f1208539b561f9c7a7392528bad56622", "8247c266c8eff0eba3e9015ef2d9cf4a", "ed3bc2d1f2401220fac3c69faeb29faf"},
    {"b6f8b2cb9cb2ff9fed81005308eb345c", "8b73cee618f1961cd7db42a142dc733e", "3054460362d4826c002dfb1cd52afc7b"},
    {"b1e47f0deecbae2235dc4ffd38db7fe9", "d601aaee36ff041b2c3bfe3b519e5035", "0a5556de9ecc541b7d72da419dd77c31"},
    {"f5f9d6662a8aae2d7406f6a46f08496e", "d41f8d2e9c3e14bf0e473473c928c03e", "161f415a089dfecc5e8a4ee425c8407a"},
    {"30085cc1ccc80f8d2c9aa7f314255cef", "f0bc79cb06589d01c6bc904ec894afbd", "bb96a821c6f6e9aadf3593816f78922c"},
    {"d6223f95b9c9fb602b735957be048bdb", "160bcf3e0f0e2039ba1988320e1e737a", "516a7697c69040f43ad315ad4e72e3af"},
    {"893067ab15ea70930774e77f41c017c7", "f6fe9b5a86a1abebd8960e892dea837c", "4cf308bfedee45913638847332192f09"},
    {"662030d6399679734e1ac67795bac4d1", "46daef0be36f682edcb2e4e845cd89d2", "a34e6b8fba7d99ee97a009d53fa42284"},
    {"9a50b206c1f2668cb50fe37ccbbd4ff8", "8198572c0e5c5b92f6f92a96c36f4acc", "0ec5cedb0c513841e327a29c9a7ae192"},
    {"7d588e18a1e6db9a1d7a6d76ca5ccce2", "c46cd801a5b75ae9a56b31c9ea5ec052", "13d1a9cce8d86ce4917d645e15c36f43"},
};

inline constexpr RoundKeyVector kRoundKeys[] = {
    {"000102030405060708090a0b0c0d0e0f", 0, "000102030405060708090a0b0c0d0e0f"},
    {"000102030405060708090a0b0c0d0e0f", 1, "d6aa74fdd2af72fadaa678f1d6ab76fe"},
    {"000102030405060708090a0b0c0d0e0f", 2, "b692cf0b643dbdf1be9bc5006830b3fe"},
    {"000102030405060708090a0b0c0d0e0f", 3, "b6ff744ed2c2c9bf6c590cbf0469bf41"},
    {"000102030405060708090a0b0c0d0e0f", 4, "47f7f7bc95353e03f96c32bcfd058dfd"},
    {"000102030405060708090a0b0c0d0e0f", 5, "3caaa3e8a99f9deb50f3af57adf622aa"},
    {"000102030405060708090a0b0c0d0e0f", 6, "5e390f7df7a69296a7553dc10aa31f6b"},
    {"000102030405060708090a0b0c0d0e0f", 7, "14f9701ae35fe28c440adf4d4ea9c026"},
    {"000102030405060708090a0b0c0d0e0f", 8, "47438735a41c65b9e016baf4aebf7ad2"},
    {"000102030405060708090a0b0c0d0e0f", 9, "549932d1f08557681093ed9cbe2c974e"},
    {"000102030405060708090a0b0c0d0e0f", 10, "13111d7fe3944a17f307a78b4d2b30c5"},
    {"2b7e151628aed2a6abf7158809cf4f3c", 0, "2b7e151628aed2a6abf7158809cf4f3c"},
    {"2b7e151628aed2a6abf7158809cf4f3c", 1, "a0fafe1788542cb123a339392a6c7605"},
    {"2b7e151628aed2a6abf7158809cf4f3c", 2, "f2c295f27a96b9435935807a7359f67f"},
    {"2b7e151628aed2a6abf7158809cf4f3c", 3, "3d80477d4716fe3e1e237e446d7a883b"},
    {"2b7e151628aed2a6abf7158809cf4f3c", 4, "ef44a541a8525b7fb671253bdb0bad00"},
    {"2b7e151628aed2a6abf7158809cf4f3c", 5, "d4d1c6f87c839d87caf2b8bc11f915bc"},
    {"2b7e151628aed2a6abf7158809cf4f3c", 6, "6d88a37a110b3efddbf98641ca0093fd"},
    {"2b7e151628aed2a6abf7158809cf4f3c", 7, "4e54f70e5f5fc9f384a64fb24ea6dc4f"},
    {"2b7e151628aed2a6abf7158809cf4f3c", 8, "ead27321b58dbad2312bf5607f8d292f"},
    {"2b7e151628aed2a6abf7158809cf4f3c", 9, "ac7766f319fadc2128d12941575c006e"},
    {"2b7e151628aed2a6abf7158809cf4f3c", 10, "d014f9a8c9ee2589e13f0cc8b6630ca6"},
    {"00000000000000000000000000000000", 0, "00000000000000000000000000000000"},
    {"00000000000000000000000000000000", 1, "62636363626363636263636362636363"},
    {"00000000000000000000000000000000", 2, "9b9898c9f9fbfbaa9b9898c9f9fbfbaa"},
    {"00000000000000000000000000000000", 3, "90973450696ccffaf2f457330b0fac99"},
    {"00000000000000000000000000000000", 4, "ee06da7b876a1581759e42b27e91ee2b"},
    {"00000000000000000000000000000000", 5, "7f2e2b88f8443e098dda7cbbf34b9290"},
    {"00000000000000000000000000000000", 6, "ec614b851425758c99ff09376ab49ba7"},
    {"00000000000000000000000000000000", 7, "217517873550620bacaf6b3cc61bf09b"},
    {"00000000000000000000000000000000", 8, "0ef903333ba9613897060a04511dfa9f"},
    {"00000000000000000000000000000000", 9, "b1d4d8e28a7db9da1d7bb3de4c664941"},
    {"00000000000000000000000000000000", 10, "b4ef5bcb3e92e21123e951cf6f8f188e"},
};

inline constexpr MacVector kMacs[] = {
    {"2b7e151628aed2a6abf7158809cf4f3c", "", "bb1d6929e95937287fa37d129b756746"},
    {"2b7e151628aed2a6abf7158809cf4f3c", "6bc1bee22e409f96e93d7e117393172a", "070a16b46b4d4144f79bdd9dd04a287c"},
    {"2b7e151628aed2a6abf7158809cf4f3c", "6bc1bee22e409f96e93d7e117393172aae2d8a571e03ac9c9eb76fac45af8e5130c81c46a35ce411", "dfa66747de9ae63030ca32611497c827"},
    {"2b7e151628aed2a6abf7158809cf4f3c", "6bc1bee22e409f96e93d7e117393172aae2d8a571e03ac9c9eb76fac45af8e5130c81c46a35ce411e5fbc1191a0a52eff69f2445df4f9b17ad2b417be66c3710", "51f0bebf7e3b9d92fc49741779363cfe"},
    {"4c18721ae36526880b0a56052a31b968", "3b", "3b78a898f5686ca899335678c283bd33"},
    {"2e1c731fcff739cc81463ed9ecca336c", "366ecdec8769a04c", "b1c45a3437a0a21e68ea0e63b721d6c1"},
    {"79485f4db47db32c784c9d3ba8003b6e", "a32b5859a1ffff6aef4ca1191bca76", "5205b041512976b2c03eff0c966d3ef6"},
    {"20d2b7895110200e6bf583d830ed2807", "4cbd4ba574b6f874addd65ee85b9030d21a9b6003b77", "1d5286e4812b2347fc0a4aac2ff599ba"},
    {"ab62dd3753ba0da5d38c5cdd022082c5", "23f3e5ae6c56a59002849aa5b62d96635120706ff64409ad07d7039d26", "d3a5b1da321f08a94d06c48e2253330a"},
    {"c7ce60928908be6d7661c9fbe6f4a69e", "c04277760e378d17a33121d6338ae5fdb38ac27fbafef87a52b04e1606968e24feb7600f", "ddbed7b982d2f33c451659da7d52a531"},
    {"cfbc62d6868aa7b89c4875c3e2dcec87", "715ed7e52782e0d041a44367a1356d8553a8a2558df6d94a5da13aa37ff9618a6bf01bed6170154009467f", "673e349a198217e5b6742d0f39070c86"},
};

}  // namespace oracle
