// Copyright 2026 The pdflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The embedded default rule pack. Rules are listed in match priority order:
// the more specific a pattern, the earlier it appears, so `user_name` hits
// the username rule before the bare `user` rule and `find_or_create` hits
// Creation/Deletion before the generic `create` or `find` verbs.

#include <string_view>

#include "pdflow/rulepack.h"

namespace pdflow {
namespace {

constexpr std::string_view kDefaultPack = R"yaml(
version: "2026.1"
sources:
  - {id: src.username, category: ACC, stem: username, patterns: ['user_?name', 'login_?(?:name|id)']}
  - {id: src.useragent, category: TEC, stem: useragent, patterns: ['user_?agent']}
  - {id: src.ip, category: OID, stem: ip, patterns: ['ip', 'ipv[46]', 'ip_?addr(?:ess)?', 'remote_?addr(?:ess)?']}
  - {id: src.mac, category: OID, stem: mac, patterns: ['mac', 'mac_?addr(?:ess)?']}
  - {id: src.email, category: CON, stem: email, patterns: ['e_?mail', 'mail_?addr(?:ess)?']}
  - {id: src.name, category: PID, stem: name, patterns: ['(?i)(?:first|given|full|last|sur(?!geon))[_\-]?name', '^name$']}
  - {id: src.nationalid, category: NID, stem: nationalid, patterns: ['national_?id(?:_?(?:number|no))?', 'national_?insurance_?(?:number|no)']}
  - {id: src.taxid, category: NID, stem: taxid, patterns: ['tax_?(?:id|number|no)', 'vat_?(?:id|number|no)']}
  - {id: src.ssn, category: NID, stem: ssn, patterns: ['ssn', 'social_?security(?:_?(?:number|no))?']}
  - {id: src.passport, category: NID, stem: passport, patterns: ['passports?']}
  - {id: src.password, category: ACC, stem: password, patterns: ['pass_?word', 'passwd', 'pwd']}
  - {id: src.phone, category: CON, stem: phone, patterns: ['phone', 'mobile', 'tel(?:ephone)?', 'msisdn']}
  - {id: src.address, category: CON, stem: address, patterns: ['address(?:es)?', 'street', 'zip_?code', 'post(?:al)?_?code']}
  - {id: src.contact, category: CON, stem: contact, patterns: ['contacts?']}
  - {id: src.gender, category: PID, stem: gender, patterns: ['gender', 'sex', '(?:fe)?male']}
  - {id: src.birth, category: PID, stem: birth, patterns: ['birth(?:day|date)?', 'dob']}
  - {id: src.age, category: PID, stem: age, patterns: ['age']}
  - {id: src.cookie, category: OID, stem: cookie, patterns: ['cookies?']}
  - {id: src.session, category: OID, stem: session, patterns: ['sessions?']}
  - {id: src.uuid, category: OID, stem: uuid, patterns: ['uuid', 'guid']}
  - {id: src.location, category: LOC, stem: location, patterns: ['locations?', 'coords?', 'coordinates', 'position']}
  - {id: src.latitude, category: LOC, stem: latitude, patterns: ['lat(?:itude)?']}
  - {id: src.longitude, category: LOC, stem: longitude, patterns: ['lng', 'lon', 'longitude']}
  - {id: src.geo, category: LOC, stem: geo, patterns: ['geo', 'geo_?(?:hash|point|ip)']}
  - {id: src.city, category: LOC, stem: city, patterns: ['city', 'cities', 'country']}
  - {id: src.feedback, category: FEE, stem: feedback, patterns: ['feedbacks?']}
  - {id: src.rating, category: FEE, stem: rating, patterns: ['ratings?']}
  - {id: src.review, category: FEE, stem: review, patterns: ['reviews?']}
  - {id: src.comment, category: FEE, stem: comment, patterns: ['comments?']}
  - {id: src.health, category: HEA, stem: health, patterns: ['health', 'medical', 'diagnos[ie]s', 'medications?']}
  - {id: src.weight, category: HEA, stem: weight, patterns: ['weight', 'bmi']}
  - {id: src.heart, category: HEA, stem: heart, patterns: ['heart(?:_?(?:rate|beat))?', 'pulse']}
  - {id: src.blood, category: HEA, stem: blood, patterns: ['blood']}
  - {id: src.steps, category: HEA, stem: steps, patterns: ['steps', 'step_?count']}
  - {id: src.device, category: TEC, stem: device, patterns: ['devices?']}
  - {id: src.os, category: TEC, stem: os, patterns: ['os', 'platform']}
  - {id: src.browser, category: TEC, stem: browser, patterns: ['browsers?']}
  - {id: src.card, category: FIN, stem: card, patterns: ['cards?', 'cvv', 'cvc', 'cc_?num(?:ber)?']}
  - {id: src.iban, category: FIN, stem: iban, patterns: ['iban', 'bic']}
  - {id: src.payment, category: FIN, stem: payment, patterns: ['payments?', 'billing']}
  - {id: src.salary, category: FIN, stem: salary, patterns: ['salary', 'salaries', 'income', 'wages?']}
  - {id: src.invoice, category: FIN, stem: invoice, patterns: ['invoices?']}
  - {id: src.account, category: ACC, stem: account, patterns: ['accounts?']}
  - {id: src.profile, category: ACC, stem: profile, patterns: ['profiles?']}
  - {id: src.user, category: ACC, stem: user, patterns: ['user']}
  - {id: lit.email, category: CON, stem: email, kind: literal, patterns: ['[A-Za-z0-9._%+\-]+@[A-Za-z0-9\-]+(?:\.[A-Za-z0-9\-]+)*\.[A-Za-z]{2,}']}
  - {id: lit.ipv4, category: OID, stem: ip, kind: literal, patterns: ['(?<![0-9.])(?:(?:25[0-5]|2[0-4][0-9]|1[0-9][0-9]|[1-9]?[0-9])\.){3}(?:25[0-5]|2[0-4][0-9]|1[0-9][0-9]|[1-9]?[0-9])(?![0-9.])']}
  - {id: lit.iban, category: FIN, stem: iban, kind: literal, patterns: ['\b[A-Z]{2}[0-9]{2}[A-Z0-9]{11,30}\b']}
  - {id: lit.ssn, category: NID, stem: ssn, kind: literal, patterns: ['\b[0-9]{3}-[0-9]{2}-[0-9]{4}\b']}
sinks:
  # Library APIs, composite names first.
  - {id: api.typeorm.create_query_builder, category: DB, pattern: 'create_?query_?builder', origin: api, provider: typeorm}
  - {id: api.sequelize.find_or_create, category: C/D, pattern: 'find_?or_?create', origin: api, provider: sequelize}
  - {id: api.typeorm.find_one, category: DB, pattern: 'find_?one(?:_?by)?', origin: api, provider: typeorm}
  - {id: api.mongoose.find_by_id, category: DB, pattern: 'find_?by_?id(?:_?and_?(?:update|delete|remove))?', origin: api, provider: mongoose}
  - {id: api.send_data, category: T, pattern: 'send_?data', origin: api, provider: generic}
  - {id: api.dynamodb.put_item, category: DB, pattern: 'put_?item', origin: api, provider: aws-sdk}
  - {id: api.dynamodb.get_item, category: DB, pattern: 'get_?item', origin: api, provider: aws-sdk}
  - {id: api.firestore.add_doc, category: DB, pattern: '(?:add|set|update|get)_?docs?', origin: api, provider: firebase}
  - {id: api.jdbc.execute_query, category: DB, pattern: 'execute_?(?:query|update)', origin: api, provider: jdbc}
  - {id: api.jdbc.prepare_statement, category: DB, pattern: 'prepare_?statement', origin: api, provider: jdbc}
  - {id: api.jpa.save_and_flush, category: DB, pattern: 'save_?(?:and_?flush|all)', origin: api, provider: spring-data}
  - {id: api.http.fetch, category: T, pattern: 'fetch', origin: api, provider: fetch}
  - {id: api.crypto.create_hash, category: E, pattern: 'create_?(?:hash|hmac|cipher(?:iv)?)', origin: api, provider: node-crypto}
  # Manipulation.
  - {id: dpv.update, category: M, pattern: 'update'}
  - {id: dpv.modify, category: M, pattern: 'modify'}
  - {id: dpv.set, category: M, pattern: 'set'}
  - {id: dpv.merge, category: M, pattern: 'merge'}
  - {id: dpv.filter, category: M, pattern: 'filter'}
  - {id: dpv.format, category: M, pattern: 'format'}
  - {id: dpv.transform, category: M, pattern: 'transform'}
  - {id: dpv.retrieve, category: M, pattern: 'retrieve'}
  - {id: dpv.get, category: M, pattern: 'get'}
  - {id: dpv.check, category: M, pattern: 'check', certainty: dashed}
  - {id: dpv.match, category: M, pattern: 'match(?:es)?', certainty: dashed}
  - {id: dpv.validate, category: M, pattern: 'validate', certainty: dashed}
  - {id: dpv.compare, category: M, pattern: 'compare', certainty: dashed}
  # Transportation.
  - {id: dpv.send, category: T, pattern: 'send'}
  - {id: dpv.transmit, category: T, pattern: 'transmit'}
  - {id: dpv.post, category: T, pattern: 'post'}
  - {id: dpv.upload, category: T, pattern: 'upload'}
  - {id: dpv.share, category: T, pattern: 'share'}
  - {id: dpv.transfer, category: T, pattern: 'transfer'}
  - {id: dpv.disclose, category: T, pattern: 'disclose'}
  # Creation and deletion.
  - {id: dpv.create, category: C/D, pattern: 'create'}
  - {id: dpv.insert, category: C/D, pattern: 'insert'}
  - {id: dpv.delete, category: C/D, pattern: 'delete'}
  - {id: dpv.remove, category: C/D, pattern: 'remove'}
  - {id: dpv.erase, category: C/D, pattern: 'erase'}
  - {id: dpv.destroy, category: C/D, pattern: 'destroy'}
  # Database.
  - {id: dpv.query, category: DB, pattern: 'query'}
  - {id: dpv.find, category: DB, pattern: 'find'}
  - {id: dpv.save, category: DB, pattern: 'save'}
  - {id: dpv.persist, category: DB, pattern: 'persist'}
  - {id: dpv.execute, category: DB, pattern: 'execute'}
  # Encryption and anonymization.
  - {id: dpv.encrypt, category: E, pattern: 'encrypt'}
  - {id: dpv.hash, category: E, pattern: 'hash'}
  - {id: dpv.digest, category: E, pattern: 'digest'}
  - {id: dpv.anonymize, category: E, pattern: 'anonymi[sz]e'}
  - {id: dpv.pseudonymize, category: E, pattern: 'pseudonymi[sz]e'}
  # Logging.
  - {id: dpv.log, category: L, pattern: 'log(?!_in(?![^_]))'}
  - {id: dpv.print, category: L, pattern: 'print(?:ln|f)?'}
  - {id: dpv.warn, category: L, pattern: 'warn(?:ing)?'}
  - {id: dpv.debug, category: L, pattern: 'debug'}
  - {id: dpv.trace, category: L, pattern: 'trace'}
  - {id: dpv.console, category: L, pattern: 'console'}
)yaml";

}  // namespace

std::string_view DefaultRulePackYaml() { return kDefaultPack; }

}  // namespace pdflow
