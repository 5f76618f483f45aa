// Seven statements mirroring the email rows of the detailed flow view.
export class EmailFlows {
  async organizationQuery(users: any) {
    query = createQueryBuilder(users.email_addr);
  }

  async groupPermissionQuery(users: any) {
    query = createQueryBuilder(users.email);
  }

  async findUser(email: string, options: any) {
    UserInfo = await this.usersRepository.findOne(email, options);
  }

  async createUser(email_addr: string, organization: any) {
    UserInfo = await this.usersService.create(email_addr, organization);
  }

  async oauthSignIn(email: string) {
    UserInfo = await this.usersService.findOrCreateByEmail(UserInfo, email);
  }

  async notify(user: any, email: string) {
    user.organizationUsers.sendData(email);
  }

  async updateUser(email_addr: string) {
    UserInfo = await this.usersService.update(UserInfo, email_addr);
  }
}
