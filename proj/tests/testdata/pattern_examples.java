package fixtures;

// One method per example so that no flow taints another.
class FlowPatternExamples {
  void retrieveName() {
    full_name = retrieve(record_data,2);
  }

  void checkGender() {
    isFemale = check(user_detail,'F');
  }

  void readFirstName() {
    first_name = UserInfo.get(2);
  }

  void matchName() {
    choice = match(name,list);
  }

  void retrieveChoice() {
    choice = UserInfo.retrieve(2);
  }

  void updateWithId() {
    AccountInfo.update(userId,index);
  }

  void updateWithIndex() {
    AccountInfo.update(index);
  }

  void printSsn() {
    print(SSN);
  }
}
